#include "qthermo/evaluation.hpp"

#include "qthermo/format.hpp"
#include "qthermo/parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qthermo {

using nlohmann::json;

double mse(const std::vector<EvalPair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("mse: empty prediction set");
    double sum = 0.0;
    for (const auto& p : pairs) {
        const double err = p.T_pred - p.T_real;
        sum += err * err;
    }
    return sum / static_cast<double>(pairs.size());
}

EvalReport evaluate_scenario(const Dataset& train, const Dataset& validation,
                             const KnnSettings& settings, ScenarioDescriptor scenario,
                             int threads) {
    if (train.n_features() != validation.n_features())
        throw std::invalid_argument("evaluate_scenario: train/validation schema width mismatch");
    for (int j = 0; j < train.schema.size(); ++j) {
        const auto& a = train.schema.entries[static_cast<std::size_t>(j)];
        const auto& b = validation.schema.entries[static_cast<std::size_t>(j)];
        if (a.time != b.time || a.observable != b.observable)
            throw std::invalid_argument("evaluate_scenario: train/validation schemas differ");
    }
    if (validation.rows() == 0)
        throw std::invalid_argument("evaluate_scenario: empty validation set");

    EvalReport report;
    int k = settings.k;
    if (!settings.cv_candidates.empty()) {
        const CrossValidationResult cv =
            cross_validate(train, settings.cv_candidates, settings.cv_folds, train.seed, threads);
        k = cv.best_k;
        report.cv_candidates = settings.cv_candidates;
        report.cv_scores = cv.scores;
    }
    const KnnModel model = fit(train, k, settings.standardize);
    const std::vector<Prediction> preds = predict_batch(model, validation.features, threads);

    report.pairs.resize(preds.size());
    for (std::size_t i = 0; i < preds.size(); ++i) {
        const auto row = static_cast<std::int64_t>(i);
        report.pairs[i] = {preds[i].temperature, validation.temperatures(row),
                           validation.gammas(row)};
    }
    report.mse = mse(report.pairs);
    report.chosen_k = k;

    scenario.schema = train.schema;
    scenario.n_d = train.schema.size();
    scenario.noise_rel_std = validation.noise_rel_std;
    scenario.noise_target = validation.noise_target;
    report.scenario = std::move(scenario);
    return report;
}

MseCurve mse_vs_nd(const Dataset& train, const Dataset& validation, const KnnSettings& settings,
                   ScenarioDescriptor scenario, int threads) {
    if (train.schema.size() < 2)
        throw std::invalid_argument("mse_vs_nd: need a schema with at least two entries");

    MseCurve curve;
    for (int nd = 1; nd <= train.schema.size(); ++nd) {
        std::vector<int> keep(static_cast<std::size_t>(nd));
        std::iota(keep.begin(), keep.end(), 0);
        const EvalReport report = evaluate_scenario(project(train, keep), project(validation, keep),
                                                    settings, scenario, threads);
        curve.points.emplace_back(nd, report.mse);
        if (nd == train.schema.size()) curve.scenario = report.scenario;
    }
    // the full-schema descriptor, but n_d range is the whole sweep
    curve.scenario.n_d = train.schema.size();
    return curve;
}

std::vector<MapPoint> data_structure_map(const GridConfig& config, double time, int threads) {
    GridConfig map_config = config;
    map_config.schema.entries = {{time, ObservableId::SigmaY}, {time, ObservableId::SigmaZ}};
    const Dataset grid = generate(map_config, threads);

    std::vector<MapPoint> points(static_cast<std::size_t>(grid.rows()));
    for (std::int64_t i = 0; i < grid.rows(); ++i)
        points[static_cast<std::size_t>(i)] = {grid.features(i, 0), grid.features(i, 1),
                                               grid.temperatures(i), grid.gammas(i)};
    return points;
}

double nearest_temperature_coherence(const std::vector<MapPoint>& points,
                                     double temperature_window) {
    if (points.size() < 2)
        throw std::invalid_argument("nearest_temperature_coherence: need at least two points");
    const auto n = static_cast<std::int64_t>(points.size());
    std::vector<int> coherent(points.size(), 0);
    parallel_for(n, 0, [&](std::int64_t i) {
        const MapPoint& p = points[static_cast<std::size_t>(i)];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = static_cast<std::size_t>(i);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == static_cast<std::size_t>(i)) continue;
            const double dy = points[j].sy - p.sy;
            const double dz = points[j].sz - p.sz;
            const double d2 = dy * dy + dz * dz;
            if (d2 < best) {
                best = d2;
                best_j = j;
            }
        }
        coherent[static_cast<std::size_t>(i)] =
            std::abs(points[best_j].temperature - p.temperature) < temperature_window ? 1 : 0;
    });
    const int hits = std::accumulate(coherent.begin(), coherent.end(), 0);
    return static_cast<double>(hits) / static_cast<double>(n);
}

namespace {

json descriptor_to_json(const ScenarioDescriptor& s) {
    json schema = json::array();
    for (const auto& e : s.schema.entries)
        schema.push_back({{"time", e.time}, {"observable", to_string(e.observable)}});
    return json{{"name", s.name},
                {"model", to_string(s.model)},
                {"gamma_known", s.gamma_known},
                {"noise", {{"rel_std", s.noise_rel_std}, {"target", to_string(s.noise_target)}}},
                {"n_d", s.n_d},
                {"schema", schema}};
}

std::ofstream open_or_throw(const std::string& path, const char* what) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(std::string(what) + ": cannot open " + path);
    return out;
}

}  // namespace

void save_report(const std::string& path, const EvalReport& report) {
    json pairs = json::array();
    for (const auto& p : report.pairs)
        pairs.push_back({{"T_pred", p.T_pred}, {"T_real", p.T_real}, {"gamma", p.gamma}});
    json j{{"format_version", "1"},
           {"kind", "eval_report"},
           {"scenario", descriptor_to_json(report.scenario)},
           {"mse", report.mse},
           {"n_val", report.n_val()},
           {"chosen_k", report.chosen_k},
           {"pairs", pairs}};
    if (!report.cv_scores.empty()) {
        j["cv"] = {{"candidates", report.cv_candidates}, {"scores", report.cv_scores}};
    }
    auto out = open_or_throw(path, "save_report");
    out << j.dump(2) << "\n";
}

void save_pairs_csv(const std::string& path, const EvalReport& report) {
    auto out = open_or_throw(path, "save_pairs_csv");
    out << "T_real,T_pred\n";
    for (const auto& p : report.pairs)
        out << fmt_double(p.T_real) << "," << fmt_double(p.T_pred) << "\n";
}

void save_curve_csv(const std::string& path, const MseCurve& curve) {
    auto out = open_or_throw(path, "save_curve_csv");
    out << "Nd,mse\n";
    for (const auto& [nd, value] : curve.points) out << nd << "," << fmt_double(value) << "\n";
}

void save_map_csv(const std::string& path, const std::vector<MapPoint>& points) {
    auto out = open_or_throw(path, "save_map_csv");
    out << "sy,sz,T\n";
    for (const auto& p : points)
        out << fmt_double(p.sy) << "," << fmt_double(p.sz) << "," << fmt_double(p.temperature)
            << "\n";
}

}  // namespace qthermo
