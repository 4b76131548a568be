#include "qthermo/scenarios.hpp"

#include "qthermo/dataset_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace qthermo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::vector<int> kCvCandidates{1, 3, 5, 9, 15, 25, 45};

// scatter figures are shown for 1, 3 and 5 measurement times
const std::vector<int> kScatterNds{1, 3, 5};

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_summary(const std::string& path, const std::string& figure,
                   const ReproduceOptions& options, const std::vector<std::string>& files,
                   json artifacts) {
    json j{{"format_version", "1"},
           {"kind", "reproduce_summary"},
           {"figure", figure},
           {"scale", to_string(options.scale)},
           {"seed", options.seed},
           {"files", files},
           {"artifacts", std::move(artifacts)}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("reproduce: cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace

std::string to_string(Scale scale) { return scale == Scale::Desk ? "desk" : "full"; }

Scale scale_from_string(const std::string& s) {
    if (s == "desk") return Scale::Desk;
    if (s == "full") return Scale::Full;
    throw std::invalid_argument("unknown scale '" + s + "' (expected desk or full)");
}

std::vector<ScenarioSpec> mse_curve_scenarios() {
    return {
        {"noiseless", ModelKind::JaynesCummings, true, ObservableId::SigmaZ, false},
        {"sz_known", ModelKind::JaynesCummings, true, ObservableId::SigmaZ, true},
        {"sz_unknown", ModelKind::JaynesCummings, false, ObservableId::SigmaZ, true},
        {"sy_unknown", ModelKind::JaynesCummings, false, ObservableId::SigmaY, true},
    };
}

std::vector<ScenarioSpec> model_comparison_scenarios() {
    return {
        {"jc", ModelKind::JaynesCummings, false, ObservableId::SigmaZ, true},
        {"rabi", ModelKind::Rabi, false, ObservableId::SigmaZ, true},
    };
}

GridConfig scenario_grid(const ScenarioSpec& spec, Scale scale, std::uint64_t seed) {
    const bool desk = scale == Scale::Desk;
    GridConfig config;
    config.model = spec.model;
    config.T_range = {0.1, 2.0, desk ? 300 : 1000};
    config.gamma_range =
        spec.gamma_known ? GridRange{1.0, 1.0, 1} : GridRange{0.1, 2.0, desk ? 20 : 100};
    config.schema = FeatureSchema::single_observable(canonical_times(), spec.observable);
    config.noise_rel_std = spec.noisy ? 0.03 : 0.0;
    config.noise_target = spec.noisy ? NoiseTarget::ValidationOnly : NoiseTarget::None;
    config.seed = seed;
    return config;
}

KnnSettings scenario_settings(const ScenarioSpec& spec) {
    KnnSettings settings;
    if (spec.noisy) {
        settings.cv_candidates = kCvCandidates;
        settings.cv_folds = 5;
    } else {
        settings.k = 1;
    }
    return settings;
}

ScenarioDescriptor descriptor_for(const ScenarioSpec& spec) {
    ScenarioDescriptor d;
    d.name = spec.name;
    d.model = spec.model;
    d.gamma_known = spec.gamma_known;
    return d;
}

EvalReport run_scenario(const ScenarioSpec& spec, Scale scale, std::uint64_t seed, int threads) {
    const GridConfig config = scenario_grid(spec, scale, seed);
    const Dataset full = generate(config, threads);
    const SplitResult parts = split(full, config.split_fraction, config.seed);
    return evaluate_scenario(parts.train, parts.validation, scenario_settings(spec),
                             descriptor_for(spec), threads);
}

MseCurve run_scenario_curve(const ScenarioSpec& spec, Scale scale, std::uint64_t seed,
                            int threads) {
    const GridConfig config = scenario_grid(spec, scale, seed);
    const Dataset full = generate(config, threads);
    const SplitResult parts = split(full, config.split_fraction, config.seed);
    return mse_vs_nd(parts.train, parts.validation, scenario_settings(spec), descriptor_for(spec),
                     threads);
}

const std::vector<std::string>& reproduce_ids() {
    static const std::vector<std::string> ids{"2a", "2b", "2c", "2d", "2e", "3maps", "3h"};
    return ids;
}

namespace {

ScenarioSpec scatter_spec(const std::string& figure_id) {
    const auto curves = mse_curve_scenarios();
    if (figure_id == "2a") return curves[0];
    if (figure_id == "2b") return curves[1];
    if (figure_id == "2c") return curves[2];
    return curves[3];  // 2d
}

std::vector<std::string> reproduce_scatter(const std::string& figure_id,
                                           const ReproduceOptions& options) {
    const ScenarioSpec spec = scatter_spec(figure_id);
    const std::string prefix = "fig" + figure_id;
    const GridConfig config = scenario_grid(spec, options.scale, options.seed);
    const Dataset full = generate(config, options.threads);
    const SplitResult parts = split(full, config.split_fraction, config.seed);
    const KnnSettings settings = scenario_settings(spec);

    std::vector<std::string> files;
    json artifacts = json::array();
    for (int nd : kScatterNds) {
        std::vector<int> keep(static_cast<std::size_t>(nd));
        std::iota(keep.begin(), keep.end(), 0);
        ScenarioDescriptor desc = descriptor_for(spec);
        desc.name = prefix + "_nd" + std::to_string(nd);
        const EvalReport report = evaluate_scenario(project(parts.train, keep),
                                                    project(parts.validation, keep), settings,
                                                    desc, options.threads);
        const std::string pairs_name = prefix + "_nd" + std::to_string(nd) + "_pairs.csv";
        const std::string report_name = prefix + "_nd" + std::to_string(nd) + "_report.json";
        save_pairs_csv(join(options.out_dir, pairs_name), report);
        save_report(join(options.out_dir, report_name), report);
        files.push_back(pairs_name);
        files.push_back(report_name);
        artifacts.push_back({{"n_d", nd},
                             {"mse", report.mse},
                             {"chosen_k", report.chosen_k},
                             {"n_val", report.n_val()},
                             {"pairs_csv", pairs_name},
                             {"report", report_name}});
    }
    const std::string summary = prefix + "_summary.json";
    write_summary(join(options.out_dir, summary), figure_id, options, files, std::move(artifacts));
    files.push_back(summary);
    for (auto& f : files) f = join(options.out_dir, f);
    return files;
}

std::vector<std::string> reproduce_curves(const std::string& figure_id, const std::string& prefix,
                                          const std::vector<ScenarioSpec>& specs,
                                          const ReproduceOptions& options) {
    std::vector<std::string> files;
    json artifacts = json::array();
    for (const auto& spec : specs) {
        const MseCurve curve = run_scenario_curve(spec, options.scale, options.seed,
                                                  options.threads);
        const std::string csv_name = prefix + "_" + spec.name + ".csv";
        save_curve_csv(join(options.out_dir, csv_name), curve);
        files.push_back(csv_name);
        json points = json::array();
        for (const auto& [nd, value] : curve.points) points.push_back({{"n_d", nd}, {"mse", value}});
        artifacts.push_back({{"scenario", spec.name},
                             {"model", to_string(spec.model)},
                             {"gamma_known", spec.gamma_known},
                             {"observable", to_string(spec.observable)},
                             {"noisy", spec.noisy},
                             {"csv", csv_name},
                             {"points", std::move(points)}});
    }
    const std::string summary = prefix + "_summary.json";
    write_summary(join(options.out_dir, summary), figure_id, options, files, std::move(artifacts));
    files.push_back(summary);
    for (auto& f : files) f = join(options.out_dir, f);
    return files;
}

std::vector<std::string> reproduce_maps(const ReproduceOptions& options) {
    std::vector<std::string> files;
    json artifacts = json::array();
    const std::vector<double> times = canonical_times();
    for (ModelKind model : {ModelKind::JaynesCummings, ModelKind::Rabi}) {
        ScenarioSpec spec{to_string(model), model, false, ObservableId::SigmaZ, false};
        const GridConfig config = scenario_grid(spec, options.scale, options.seed);
        const double window = 0.1 * (config.T_range.max - config.T_range.min);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto points = data_structure_map(config, times[i], options.threads);
            const std::string csv_name =
                "fig3_map_" + spec.name + "_" + std::to_string(i + 1) + ".csv";
            save_map_csv(join(options.out_dir, csv_name), points);
            files.push_back(csv_name);
            artifacts.push_back({{"model", spec.name},
                                 {"time", times[i]},
                                 {"csv", csv_name},
                                 {"nearest_temperature_coherence",
                                  nearest_temperature_coherence(points, window)},
                                 {"coherence_window", window}});
        }
    }
    const std::string summary = "fig3maps_summary.json";
    write_summary(join(options.out_dir, summary), "3maps", options, files, std::move(artifacts));
    files.push_back(summary);
    for (auto& f : files) f = join(options.out_dir, f);
    return files;
}

}  // namespace

std::vector<std::string> reproduce(const std::string& figure_id,
                                   const ReproduceOptions& options) {
    fs::create_directories(options.out_dir);
    if (figure_id == "2a" || figure_id == "2b" || figure_id == "2c" || figure_id == "2d")
        return reproduce_scatter(figure_id, options);
    if (figure_id == "2e") return reproduce_curves("2e", "fig2e", mse_curve_scenarios(), options);
    if (figure_id == "3h")
        return reproduce_curves("3h", "fig3h", model_comparison_scenarios(), options);
    if (figure_id == "3maps") return reproduce_maps(options);

    std::string valid;
    for (const auto& id : reproduce_ids()) valid += (valid.empty() ? "" : ", ") + id;
    throw std::invalid_argument("reproduce: unknown figure id '" + figure_id + "' (valid: " +
                                valid + ")");
}

}  // namespace qthermo
