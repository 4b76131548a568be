#pragma once

// Named end-to-end recipes behind `reproduce`: each figure id maps to a set
// of scenario runs (generate -> split -> fit -> evaluate) plus the plot-data
// files they emit. The acceptance checks drive the same run_* entry points,
// so a figure that reproduces here is the same code path a user gets.
//
// Scales: "desk" keeps every grid small enough that the whole figure set
// finishes in minutes on one core (300 temperatures, 20 couplings); "full"
// uses the original 1000 x 100 grids.

#include "qthermo/evaluation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qthermo {

enum class Scale { Desk, Full };

std::string to_string(Scale scale);
Scale scale_from_string(const std::string& s);

// One classifier run: which model and observable, whether the coupling is
// swept over its uncertainty interval or pinned to gamma = 1, and whether
// the validation features get the 3% readout noise.
struct ScenarioSpec {
    std::string name;
    ModelKind model{ModelKind::JaynesCummings};
    bool gamma_known{true};
    ObservableId observable{ObservableId::SigmaZ};
    bool noisy{true};
};

// The four MSE-vs-N_d curves: noiseless baseline, then noisy sigma_z with
// known gamma, noisy sigma_z with unknown gamma, noisy sigma_y with unknown
// gamma.
std::vector<ScenarioSpec> mse_curve_scenarios();

// The model comparison: JC vs Rabi, both noisy sigma_z with unknown gamma.
std::vector<ScenarioSpec> model_comparison_scenarios();

// Grid for a scenario at a scale: T in [0.1, 2] with 300 (desk) or 1000
// (full) points; gamma pinned to 1 when known, else swept over [0.1, 2]
// with 20 (desk) or 100 (full) points. Noise 3% on validation when noisy.
GridConfig scenario_grid(const ScenarioSpec& spec, Scale scale, std::uint64_t seed);

// Classifier policy: cross-validated k over {1,3,5,9,15,25,45} (5 folds)
// for noisy scenarios; plain k=1 for noiseless ones, where every neighbour
// carries a distinct per-value label and voting cannot change the outcome.
KnnSettings scenario_settings(const ScenarioSpec& spec);

ScenarioDescriptor descriptor_for(const ScenarioSpec& spec);

// generate -> split -> evaluate on the full schema.
EvalReport run_scenario(const ScenarioSpec& spec, Scale scale, std::uint64_t seed,
                        int threads = 0);

// Same pipeline, swept over schema prefixes N_d = 1..7.
MseCurve run_scenario_curve(const ScenarioSpec& spec, Scale scale, std::uint64_t seed,
                            int threads = 0);

struct ReproduceOptions {
    Scale scale{Scale::Desk};
    std::uint64_t seed{42};
    int threads{0};
    std::string out_dir{"."};
};

// Valid figure ids: 2a, 2b, 2c, 2d, 2e, 3maps, 3h.
const std::vector<std::string>& reproduce_ids();

// Writes the plot-data CSVs and a summary JSON for one figure id into
// options.out_dir (created if missing). Returns the paths written, in a
// deterministic order. Throws std::invalid_argument for unknown ids.
std::vector<std::string> reproduce(const std::string& figure_id, const ReproduceOptions& options);

}  // namespace qthermo
