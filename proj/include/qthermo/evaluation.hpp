#pragma once

// Scoring layer: fits a classifier on a training split, predicts the
// validation split, and reduces the result to the artifacts worth plotting —
// predicted-vs-real pairs, the MSE, MSE-vs-N_d curves, and two-observable
// maps of the raw feature geometry.
//
// Conventions baked in here:
//   * T_pred is the decoded bin center, T_real the exact grid temperature,
//     so MSE is well defined on class labels.
//   * N_d sub-selection always takes time-ordered prefixes of the schema.

#include "qthermo/dataset.hpp"
#include "qthermo/knn.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qthermo {

// Classifier configuration for one scenario: either a fixed k, or
// cross-validated selection when `cv_candidates` is non-empty.
struct KnnSettings {
    int k{5};
    std::vector<int> cv_candidates;
    int cv_folds{5};
    bool standardize{false};
};

// Carried on every report so the output files are self-describing.
struct ScenarioDescriptor {
    std::string name;  // free-form tag, e.g. "fig2b"
    ModelKind model{ModelKind::JaynesCummings};
    bool gamma_known{true};
    double noise_rel_std{0.0};
    NoiseTarget noise_target{NoiseTarget::None};
    FeatureSchema schema;  // the feature subset actually used
    int n_d{0};
};

struct EvalPair {
    double T_pred{0.0};
    double T_real{0.0};
    double gamma{0.0};
};

struct EvalReport {
    ScenarioDescriptor scenario;
    std::vector<EvalPair> pairs;
    double mse{0.0};
    int chosen_k{0};
    // Populated only when k was picked by cross-validation.
    std::vector<int> cv_candidates;
    std::vector<double> cv_scores;

    std::int64_t n_val() const { return static_cast<std::int64_t>(pairs.size()); }
};

struct MseCurve {
    ScenarioDescriptor scenario;
    std::vector<std::pair<int, double>> points;  // (N_d, mse), N_d increasing
};

// One point of a two-observable feature map: (<sigma_y>_t, <sigma_z>_t)
// tagged with the temperature that produced it.
struct MapPoint {
    double sy{0.0};
    double sz{0.0};
    double temperature{0.0};
    double gamma{0.0};
};

// Mean squared error over prediction pairs. Throws std::invalid_argument on
// empty input.
double mse(const std::vector<EvalPair>& pairs);

// Fits on `train` (cross-validating k when requested), predicts `validation`,
// and assembles the report. The descriptor's schema/n_d/noise fields are
// filled in from the datasets; name/model/gamma_known are taken as given.
EvalReport evaluate_scenario(const Dataset& train, const Dataset& validation,
                             const KnnSettings& settings, ScenarioDescriptor scenario = {},
                             int threads = 0);

// Runs evaluate_scenario on the first 1..N feature columns of the (already
// split and noised) datasets. Requires a schema with at least two entries.
MseCurve mse_vs_nd(const Dataset& train, const Dataset& validation, const KnnSettings& settings,
                   ScenarioDescriptor scenario = {}, int threads = 0);

// Simulates the (T, gamma) grid of `config` and reports the probe's
// (<sigma_y>, <sigma_z>) at one time per grid point. No classification; this
// is the raw data-structure view. Any schema in `config` is ignored.
std::vector<MapPoint> data_structure_map(const GridConfig& config, double time, int threads = 0);

// Fraction of map points whose nearest neighbour in the (sy, sz) plane has a
// temperature within `temperature_window` of their own. Quantifies how
// cleanly the plane is segmented by temperature.
double nearest_temperature_coherence(const std::vector<MapPoint>& points,
                                     double temperature_window);

// --- artifact writers (shared by the CLI and the acceptance suite) ---

// JSON report: scenario descriptor, mse, n_val, chosen k, CV trace, pairs.
void save_report(const std::string& path, const EvalReport& report);

// CSV `T_real,T_pred`, one row per validation point (gamma stays in the
// JSON report; the CSV header is part of the interface).
void save_pairs_csv(const std::string& path, const EvalReport& report);

// CSV `Nd,mse`, one row per curve point.
void save_curve_csv(const std::string& path, const MseCurve& curve);

// CSV `sy,sz,T`, one row per map point.
void save_map_csv(const std::string& path, const std::vector<MapPoint>& points);

}  // namespace qthermo
