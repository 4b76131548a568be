#include "qthermo/dataset_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace qthermo;
namespace fs = std::filesystem;

namespace {

// what an expression throws, for asserting on the message
template <typename Fn>
std::string thrown_message(Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() /
                     ("qthermo_io_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

GridConfig tiny_grid() {
    GridConfig config;
    config.T_range = {0.5, 1.5, 4};
    config.gamma_range = {1.0, 1.0, 1};
    config.schema = FeatureSchema{{{1.6, ObservableId::SigmaZ}, {2.5, ObservableId::SigmaY}}};
    config.noise_rel_std = 0.03;
    config.seed = 7;
    return config;
}

void rewrite(const std::string& path, const std::string& from, const std::string& to) {
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    text.replace(at, from.size(), to);
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_SUITE("dataset_io") {

TEST_CASE("manifest path sits next to the csv") {
    CHECK(manifest_path_for("runs/data.csv") == "runs/data.manifest.json");
    CHECK(manifest_path_for("data.csv") == "data.manifest.json");
    CHECK(manifest_path_for("runs.v2/data") == "runs.v2/data.manifest.json");
}

TEST_CASE("save and load round-trip bit-exactly") {
    TempDir dir;
    const GridConfig config = tiny_grid();
    const Dataset data = generate(config);
    save_dataset(dir.file("data.csv"), data, config);
    const Dataset back = load_dataset(dir.file("data.csv"));

    REQUIRE(back.rows() == data.rows());
    REQUIRE(back.n_features() == data.n_features());
    CHECK((back.features - data.features).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.temperatures - data.temperatures).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.gammas - data.gammas).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.labels == data.labels);

    CHECK(back.schema.entries[0].time == 1.6);
    CHECK(back.schema.entries[1].observable == ObservableId::SigmaY);
    CHECK(back.binning.per_value == data.binning.per_value);
    CHECK(back.binning.bin_edges == data.binning.bin_edges);
    CHECK(back.binning.bin_centers == data.binning.bin_centers);
    CHECK(back.noise_rel_std == data.noise_rel_std);
    CHECK(back.noise_target == data.noise_target);
    CHECK(back.seed == data.seed);

    // loaded rows are renumbered
    for (std::int64_t i = 0; i < back.rows(); ++i)
        CHECK(back.row_ids[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("role and noise flags are recorded in the manifest") {
    TempDir dir;
    const GridConfig config = tiny_grid();
    const Dataset data = generate(config);
    save_dataset(dir.file("val.csv"), data, config, {"validation", true});

    std::ifstream mf(manifest_path_for(dir.file("val.csv")));
    std::string text((std::istreambuf_iterator<char>(mf)), std::istreambuf_iterator<char>());
    CHECK(text.find("\"role\": \"validation\"") != std::string::npos);
    CHECK(text.find("\"noise_applied\": true") != std::string::npos);
    CHECK(text.find("\"kind\": \"dataset\"") != std::string::npos);
}

TEST_CASE("corrupted inputs are refused") {
    TempDir dir;
    const GridConfig config = tiny_grid();
    const Dataset data = generate(config);
    const std::string csv = dir.file("data.csv");
    save_dataset(csv, data, config);

    SUBCASE("missing manifest") {
        fs::remove(manifest_path_for(csv));
        CHECK(thrown_message([&] { (void)load_dataset(csv); }).find("missing manifest") !=
              std::string::npos);
    }
    SUBCASE("wrong format version") {
        rewrite(manifest_path_for(csv), "\"format_version\": \"1\"",
                "\"format_version\": \"99\"");
        CHECK(thrown_message([&] { (void)load_dataset(csv); }).find("format_version") !=
              std::string::npos);
    }
    SUBCASE("header does not match the manifest schema") {
        rewrite(csv, "f0,f1,temperature", "f0,temperature");
        CHECK(thrown_message([&] { (void)load_dataset(csv); }).find("header") !=
              std::string::npos);
    }
    SUBCASE("non-numeric field") {
        rewrite(csv, ",0.5,", ",oops,");  // the first row's temperature column
        CHECK_THROWS_AS((void)load_dataset(csv), std::runtime_error);
    }
    SUBCASE("fractional label") {
        rewrite(csv, ",0\n", ",0.25\n");
        CHECK(thrown_message([&] { (void)load_dataset(csv); }).find("label") !=
              std::string::npos);
    }
}

TEST_CASE("feature rows load from labeled and from plain csv files") {
    TempDir dir;
    const GridConfig config = tiny_grid();
    const Dataset data = generate(config);
    save_dataset(dir.file("data.csv"), data, config);

    // full dataset file: the trailing temperature/gamma/label columns drop off
    const FeatureMatrix from_dataset = load_feature_rows(dir.file("data.csv"));
    REQUIRE(from_dataset.rows() == data.rows());
    REQUIRE(from_dataset.cols() == data.n_features());
    CHECK((from_dataset - data.features).cwiseAbs().maxCoeff() == 0.0);

    // headerless matrix
    {
        std::ofstream plain(dir.file("plain.csv"));
        plain << "0.25,-0.5\n0.125,1.0\n";
    }
    const FeatureMatrix from_plain = load_feature_rows(dir.file("plain.csv"));
    REQUIRE(from_plain.rows() == 2);
    REQUIRE(from_plain.cols() == 2);
    CHECK(from_plain(1, 1) == 1.0);

    CHECK_THROWS_AS((void)load_feature_rows(dir.file("absent.csv")), std::runtime_error);
}

}  // TEST_SUITE
