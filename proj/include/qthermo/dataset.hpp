// dataset.hpp — labeled observation datasets swept over (T, gamma) grids
//
// generate() emits noiseless feature rows; Gaussian readout noise is applied
// when the train/validation split is taken, to the side(s) selected by
// NoiseTarget. Rows own counter-based noise streams keyed by their position
// in the generating grid, so the result is independent of how the work is
// scheduled.

#pragma once

#include "qthermo/binning.hpp"
#include "qthermo/dynamics.hpp"
#include "qthermo/operators.hpp"
#include "qthermo/rng.hpp"

#include <cstdint>
#include <optional>

namespace qthermo {

enum class NoiseTarget { None, ValidationOnly, Both };

std::string to_string(NoiseTarget t);
NoiseTarget noise_target_from_string(const std::string& s);

struct GridRange {
    double min{0.0};
    double max{0.0};
    int count{1};  // count == 1 pins the value to min

    double value(int i) const {
        if (count <= 1) return min;
        return min + (max - min) * static_cast<double>(i) / (count - 1);
    }
    std::vector<double> values() const {
        std::vector<double> v(count);
        for (int i = 0; i < count; ++i) v[i] = value(i);
        return v;
    }
};

struct GridConfig {
    ModelKind model{ModelKind::JaynesCummings};
    double omega{1.0};
    double qubit_gap{1.0};
    int cutoff{60};
    GridRange T_range{0.1, 2.0, 1000};
    GridRange gamma_range{0.1, 2.0, 100};
    FeatureSchema schema{FeatureSchema::single_observable(canonical_times(), ObservableId::SigmaZ)};
    ProbeState probe{plus_state()};
    double noise_rel_std{0.03};
    NoiseTarget noise_target{NoiseTarget::ValidationOnly};
    double split_fraction{0.7};
    int n_bins{0};
    std::uint64_t seed{42};
    double tail_tol{1e-9};

    std::int64_t rows() const {
        return static_cast<std::int64_t>(T_range.count) * gamma_range.count;
    }
    void validate() const;
};

using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Dataset {
    FeatureSchema schema;
    FeatureMatrix features;        // n x N_d
    Eigen::VectorXd temperatures;  // n
    Eigen::VectorXd gammas;        // n
    Eigen::VectorXi labels;        // n, bin indices
    std::vector<std::int64_t> row_ids;  // identity in the generating grid
    TemperatureBinning binning;

    // carried from GridConfig so split() knows what noise to apply and so
    // seeded downstream steps (cross-validation folds) stay deterministic
    double noise_rel_std{0.0};
    NoiseTarget noise_target{NoiseTarget::None};
    std::uint64_t seed{42};

    std::int64_t rows() const { return features.rows(); }
    int n_features() const { return static_cast<int>(features.cols()); }
};

// One row per (T, gamma) grid point, gamma-major (row = ig * T_count + it).
Dataset generate(const GridConfig& config, int threads = 0);

// Each entry x is replaced by a draw from Normal(x, rel_std * |x|).
void add_noise(Eigen::Ref<Eigen::RowVectorXd> features, double rel_std, SplitMix64& rng);

struct SplitResult {
    Dataset train;
    Dataset validation;
};

// Uniformly random row partition, deterministic under seed. Noise is applied
// here according to the dataset's noise_target.
SplitResult split(const Dataset& dataset, double fraction, std::uint64_t seed);

// Restrict features to the selected schema entries; labels unchanged.
Dataset project(const Dataset& dataset, const std::vector<int>& indices);

}  // namespace qthermo
