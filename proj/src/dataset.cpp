#include "qthermo/dataset.hpp"

#include "qthermo/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace qthermo {

namespace {

// sub-seed salts so shuffling and noise never share a stream
constexpr std::uint64_t kSplitSalt = 0x53504C4954ull;  // "SPLIT"
constexpr std::uint64_t kNoiseSalt = 0x4E4F495345ull;  // "NOISE"

}  // namespace

std::string to_string(NoiseTarget t) {
    switch (t) {
        case NoiseTarget::None: return "none";
        case NoiseTarget::ValidationOnly: return "validation_only";
        case NoiseTarget::Both: return "both";
    }
    return "?";
}

NoiseTarget noise_target_from_string(const std::string& s) {
    if (s == "none") return NoiseTarget::None;
    if (s == "validation_only") return NoiseTarget::ValidationOnly;
    if (s == "both") return NoiseTarget::Both;
    throw std::invalid_argument("unknown noise target '" + s +
                                "' (expected none, validation_only or both)");
}

void GridConfig::validate() const {
    if (T_range.min <= 0.0 || T_range.max < T_range.min || T_range.count < 1)
        throw std::invalid_argument("GridConfig: temperature range must be positive and ordered");
    if (gamma_range.min < 0.0 || gamma_range.max < gamma_range.min || gamma_range.count < 1)
        throw std::invalid_argument("GridConfig: gamma range must be non-negative and ordered");
    if (noise_rel_std < 0.0) throw std::invalid_argument("GridConfig: noise_rel_std must be >= 0");
    if (split_fraction <= 0.0 || split_fraction >= 1.0)
        throw std::invalid_argument("GridConfig: split_fraction must lie in (0, 1)");
    if (n_bins == 1 || n_bins < 0)
        throw std::invalid_argument("GridConfig: n_bins must be 0 (per value) or >= 2");
    schema.validate();
    probe.validate();
    HamiltonianSpec{model, omega, qubit_gap, gamma_range.min, cutoff}.validate();
}

Dataset generate(const GridConfig& config, int threads) {
    config.validate();
    if (config.rows() == 0) throw std::invalid_argument("generate: empty grid");

    const std::vector<double> t_values = config.T_range.values();
    const std::vector<double> g_values = config.gamma_range.values();
    const int n_t = config.T_range.count;
    const int n_g = config.gamma_range.count;
    const int n_features = config.schema.size();

    Dataset out;
    out.schema = config.schema;
    out.binning = bin_temperatures(t_values, config.n_bins);
    out.noise_rel_std = config.noise_rel_std;
    out.noise_target = config.noise_target;
    out.seed = config.seed;
    out.features.resize(config.rows(), n_features);
    out.temperatures.resize(config.rows());
    out.gammas.resize(config.rows());
    out.labels.resize(config.rows());
    out.row_ids.resize(config.rows());

    // Gibbs populations and labels depend on T only; share them across gammas.
    std::vector<ThermalSystemState> thermal(n_t);
    std::vector<int> labels(n_t);
    for (int it = 0; it < n_t; ++it) {
        thermal[it] = gibbs_populations(config.omega, t_values[it], config.cutoff,
                                        config.tail_tol);
        labels[it] = out.binning.encode(t_values[it]);
    }

    // One Hamiltonian diagonalization per gamma, then every temperature is a
    // dot product against the per-Fock feature table.
    parallel_for(n_g, threads, [&](std::int64_t ig) {
        HamiltonianSpec spec{config.model, config.omega, config.qubit_gap,
                             g_values[static_cast<int>(ig)], config.cutoff};
        const TrajectoryEngine engine(spec, config.probe, config.schema);
        for (int it = 0; it < n_t; ++it) {
            const std::int64_t row = ig * n_t + it;
            out.features.row(row) = engine.features(thermal[it]).transpose();
            out.temperatures(row) = t_values[it];
            out.gammas(row) = g_values[static_cast<int>(ig)];
            out.labels(row) = labels[it];
            out.row_ids[static_cast<std::size_t>(row)] = row;
        }
    });
    return out;
}

void add_noise(Eigen::Ref<Eigen::RowVectorXd> features, double rel_std, SplitMix64& rng) {
    if (rel_std < 0.0) throw std::invalid_argument("add_noise: rel_std must be >= 0");
    if (rel_std == 0.0) return;
    for (Eigen::Index j = 0; j < features.size(); ++j)
        features(j) += rel_std * std::abs(features(j)) * rng.next_gaussian();
}

namespace {

Dataset take_rows(const Dataset& src, const std::vector<std::int64_t>& rows) {
    Dataset out;
    out.schema = src.schema;
    out.binning = src.binning;
    out.noise_rel_std = src.noise_rel_std;
    out.noise_target = src.noise_target;
    out.seed = src.seed;
    out.features.resize(static_cast<std::int64_t>(rows.size()), src.features.cols());
    out.temperatures.resize(static_cast<std::int64_t>(rows.size()));
    out.gammas.resize(static_cast<std::int64_t>(rows.size()));
    out.labels.resize(static_cast<std::int64_t>(rows.size()));
    out.row_ids.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::int64_t r = rows[i];
        out.features.row(static_cast<std::int64_t>(i)) = src.features.row(r);
        out.temperatures(static_cast<std::int64_t>(i)) = src.temperatures(r);
        out.gammas(static_cast<std::int64_t>(i)) = src.gammas(r);
        out.labels(static_cast<std::int64_t>(i)) = src.labels(r);
        out.row_ids[i] = src.row_ids[static_cast<std::size_t>(r)];
    }
    return out;
}

void apply_noise_rows(Dataset& part, double rel_std, std::uint64_t noise_seed) {
    for (std::int64_t i = 0; i < part.rows(); ++i) {
        SplitMix64 rng = substream(noise_seed, static_cast<std::uint64_t>(part.row_ids[i]));
        add_noise(part.features.row(i), rel_std, rng);
    }
}

}  // namespace

SplitResult split(const Dataset& dataset, double fraction, std::uint64_t seed) {
    if (dataset.rows() < 2) throw std::invalid_argument("split: need at least 2 rows");
    if (fraction <= 0.0 || fraction >= 1.0)
        throw std::invalid_argument("split: fraction must lie in (0, 1)");

    const std::int64_t n = dataset.rows();
    std::vector<std::int64_t> order(n);
    for (std::int64_t i = 0; i < n; ++i) order[i] = i;

    SplitMix64 rng = substream(mix64(seed ^ kSplitSalt), 0);
    for (std::int64_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
        std::swap(order[i], order[j]);
    }

    std::int64_t n_train = std::llround(fraction * static_cast<double>(n));
    n_train = std::clamp<std::int64_t>(n_train, 1, n - 1);

    std::vector<std::int64_t> train_rows(order.begin(), order.begin() + n_train);
    std::vector<std::int64_t> val_rows(order.begin() + n_train, order.end());
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(val_rows.begin(), val_rows.end());

    SplitResult result{take_rows(dataset, train_rows), take_rows(dataset, val_rows)};

    const std::uint64_t noise_seed = mix64(seed ^ kNoiseSalt);
    if (dataset.noise_rel_std > 0.0) {
        if (dataset.noise_target == NoiseTarget::ValidationOnly ||
            dataset.noise_target == NoiseTarget::Both)
            apply_noise_rows(result.validation, dataset.noise_rel_std, noise_seed);
        if (dataset.noise_target == NoiseTarget::Both)
            apply_noise_rows(result.train, dataset.noise_rel_std, noise_seed);
    }
    return result;
}

Dataset project(const Dataset& dataset, const std::vector<int>& indices) {
    if (indices.empty()) throw std::invalid_argument("project: no indices given");
    for (int idx : indices)
        if (idx < 0 || idx >= dataset.n_features())
            throw std::out_of_range("project: schema index " + std::to_string(idx) +
                                    " out of range");

    Dataset out;
    out.schema.entries.reserve(indices.size());
    for (int idx : indices) out.schema.entries.push_back(dataset.schema.entries[idx]);
    out.binning = dataset.binning;
    out.noise_rel_std = dataset.noise_rel_std;
    out.noise_target = dataset.noise_target;
    out.seed = dataset.seed;
    out.temperatures = dataset.temperatures;
    out.gammas = dataset.gammas;
    out.labels = dataset.labels;
    out.row_ids = dataset.row_ids;
    out.features.resize(dataset.rows(), static_cast<std::int64_t>(indices.size()));
    for (std::size_t j = 0; j < indices.size(); ++j)
        out.features.col(static_cast<std::int64_t>(j)) = dataset.features.col(indices[j]);
    return out;
}

}  // namespace qthermo
