#include "qthermo/evaluation.hpp"

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace qthermo;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("qthermo_eval_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string first_line(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
}

GridConfig line_grid(int n_temperatures) {
    GridConfig config;
    config.T_range = {0.5, 1.5, n_temperatures};
    config.gamma_range = {1.0, 1.0, 1};
    config.noise_rel_std = 0.0;
    config.noise_target = NoiseTarget::None;
    return config;
}

}  // namespace

TEST_SUITE("evaluation") {

TEST_CASE("mse arithmetic") {
    CHECK(mse({{1.1, 1.0, 0.0}, {2.0, 2.0, 0.0}}) == doctest::Approx(0.005).epsilon(1e-15));
    CHECK(mse({{0.7, 0.7, 1.0}}) == 0.0);

    // a uniform offset delta gives exactly delta^2
    std::vector<EvalPair> offset;
    for (int i = 0; i < 10; ++i)
        offset.push_back({0.1 * i + 0.25, 0.1 * i, 0.0});
    CHECK(mse(offset) == doctest::Approx(0.0625).epsilon(1e-12));

    CHECK_THROWS_AS((void)mse({}), std::invalid_argument);
}

TEST_CASE("memorization scores zero") {
    // validating on the training rows with k = 1 must recover every label
    const Dataset data = generate(line_grid(20));
    KnnSettings settings;
    settings.k = 1;

    ScenarioDescriptor tag;
    tag.name = "memorization";
    const EvalReport report = evaluate_scenario(data, data, settings, tag);

    CHECK(report.mse == 0.0);
    CHECK(report.chosen_k == 1);
    CHECK(report.n_val() == 20);
    CHECK(report.scenario.name == "memorization");
    CHECK(report.scenario.n_d == 7);
    CHECK(report.scenario.schema.size() == 7);
    CHECK(report.cv_candidates.empty());
    for (const EvalPair& p : report.pairs) CHECK(p.T_pred == p.T_real);
}

TEST_CASE("report is internally consistent on a noisy split") {
    GridConfig config = line_grid(60);
    config.noise_rel_std = 0.03;
    config.noise_target = NoiseTarget::ValidationOnly;
    const Dataset full = generate(config);
    const SplitResult parts = split(full, 0.7, config.seed);

    KnnSettings settings;
    settings.cv_candidates = {1, 3};
    settings.cv_folds = 3;
    const EvalReport report = evaluate_scenario(parts.train, parts.validation, settings);

    CHECK(report.n_val() == 18);  // 60 - llround(0.7 * 60)
    CHECK((report.chosen_k == 1 || report.chosen_k == 3));
    CHECK(report.cv_candidates == std::vector<int>{1, 3});
    CHECK(report.cv_scores.size() == 2);
    CHECK(report.scenario.noise_rel_std == 0.03);
    CHECK(report.scenario.noise_target == NoiseTarget::ValidationOnly);

    double sum = 0.0;
    for (const EvalPair& p : report.pairs) sum += (p.T_pred - p.T_real) * (p.T_pred - p.T_real);
    CHECK(report.mse == doctest::Approx(sum / report.n_val()).epsilon(1e-14));

    // T_real values are grid temperatures, T_pred values are bin centers
    for (const EvalPair& p : report.pairs) {
        CHECK(p.T_real >= 0.5);
        CHECK(p.T_real <= 1.5);
        CHECK(full.binning.decode(full.binning.encode(p.T_pred)) == p.T_pred);
    }
}

TEST_CASE("feature-count sweep takes schema prefixes") {
    const Dataset full = generate(line_grid(40));
    const SplitResult parts = split(full, 0.7, 42);
    KnnSettings settings;
    settings.k = 1;

    const MseCurve curve = mse_vs_nd(parts.train, parts.validation, settings);
    REQUIRE(curve.points.size() == 7);
    for (int j = 0; j < 7; ++j) CHECK(curve.points[static_cast<std::size_t>(j)].first == j + 1);

    // each point equals an independent evaluation of the projected prefix
    for (int nd : {1, 4, 7}) {
        std::vector<int> indices;
        for (int j = 0; j < nd; ++j) indices.push_back(j);
        const EvalReport direct = evaluate_scenario(project(parts.train, indices),
                                                    project(parts.validation, indices), settings);
        CHECK(curve.points[static_cast<std::size_t>(nd - 1)].second == direct.mse);
    }
}

TEST_CASE("mismatched train and validation schemas are rejected") {
    const Dataset full = generate(line_grid(20));
    const SplitResult parts = split(full, 0.7, 42);
    const Dataset narrowed = project(parts.validation, {0, 1, 2});
    KnnSettings settings;
    settings.k = 1;
    CHECK_THROWS_AS((void)evaluate_scenario(parts.train, narrowed, settings),
                    std::invalid_argument);
}

TEST_CASE("data-structure map reports raw probe moments") {
    GridConfig config = line_grid(12);
    config.gamma_range = {0.5, 1.0, 3};

    // before any evolution the |+> probe has <sigma_y> = <sigma_z> = 0
    const auto start = data_structure_map(config, 0.0);
    REQUIRE(start.size() == 36);
    for (const MapPoint& p : start) {
        CHECK(p.sy == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
        CHECK(p.sz == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }

    const auto later = data_structure_map(config, 1.6);
    for (const MapPoint& p : later) {
        CHECK(std::abs(p.sy) <= 1.0 + 1e-12);
        CHECK(std::abs(p.sz) <= 1.0 + 1e-12);
        CHECK(p.temperature >= 0.5);
        CHECK(p.gamma >= 0.5);
    }
    // the map must actually move off the origin once the probe has evolved
    double spread = 0.0;
    for (const MapPoint& p : later) spread = std::max(spread, std::abs(p.sz));
    CHECK(spread > 0.1);
}

TEST_CASE("nearest-temperature coherence counts planar neighbors") {
    // A and B are mutual nearest neighbors with close temperatures; C's
    // nearest point is far away in temperature -> 2 of 3 are coherent
    std::vector<MapPoint> points{
        {0.00, 0.00, 1.00, 1.0},
        {0.05, 0.00, 1.01, 1.0},
        {0.90, 0.90, 5.00, 1.0},
    };
    CHECK(nearest_temperature_coherence(points, 0.1) == doctest::Approx(2.0 / 3.0));
    CHECK(nearest_temperature_coherence(points, 10.0) == 1.0);
    CHECK_THROWS_AS((void)nearest_temperature_coherence({points[0]}, 0.1),
                    std::invalid_argument);
}

TEST_CASE("artifact files carry the pinned headers") {
    TempDir dir;
    EvalReport report;
    report.scenario.name = "headers";
    report.pairs = {{0.575, 0.5, 1.0}, {1.525, 1.5, 1.0}};
    report.mse = mse(report.pairs);
    report.chosen_k = 1;

    save_pairs_csv(dir.file("pairs.csv"), report);
    CHECK(first_line(dir.file("pairs.csv")) == "T_real,T_pred");

    MseCurve curve;
    curve.points = {{1, 0.5}, {2, 0.25}};
    save_curve_csv(dir.file("curve.csv"), curve);
    CHECK(first_line(dir.file("curve.csv")) == "Nd,mse");

    save_map_csv(dir.file("map.csv"), {{0.1, -0.2, 1.0, 1.0}});
    CHECK(first_line(dir.file("map.csv")) == "sy,sz,T");

    save_report(dir.file("report.json"), report);
    std::ifstream in(dir.file("report.json"));
    const nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j.at("kind") == "eval_report");
    CHECK(j.at("format_version") == "1");
    CHECK(j.at("mse").get<double>() == report.mse);
    CHECK(j.at("n_val").get<int>() == 2);
    CHECK(j.at("pairs").size() == 2);
    CHECK(j.at("scenario").at("name") == "headers");

    // pair rows print with enough digits to reload exactly
    std::ifstream pairs(dir.file("pairs.csv"));
    std::string header, row;
    std::getline(pairs, header);
    std::getline(pairs, row);
    CHECK(row == "0.5,0.57499999999999996");
}

}  // TEST_SUITE
