#include "qthermo/knn.hpp"
#include "qthermo/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <unistd.h>
#include <utility>
#include <vector>

using namespace qthermo;

namespace {

// Reference classifier, written against the documented policy only:
// neighbors order by (distance, row index); the modal label wins; a vote
// tie goes to the label of the nearest neighbor holding a tied count.
int reference_label(const FeatureMatrix& features, const Eigen::VectorXi& labels,
                    const Eigen::RowVectorXd& query, int k) {
    std::vector<std::pair<double, std::int64_t>> order;
    order.reserve(static_cast<std::size_t>(features.rows()));
    for (std::int64_t i = 0; i < features.rows(); ++i)
        order.emplace_back((features.row(i) - query).squaredNorm(), i);
    std::sort(order.begin(), order.end());

    std::map<int, int> counts;
    int best = 0;
    for (int j = 0; j < k; ++j)
        best = std::max(best, ++counts[labels(order[static_cast<std::size_t>(j)].second)]);
    for (int j = 0; j < k; ++j) {
        const int label = labels(order[static_cast<std::size_t>(j)].second);
        if (counts[label] == best) return label;
    }
    return -1;
}

// physics-free dataset over integer temperatures 0..4
Dataset toy_dataset(const FeatureMatrix& features, const std::vector<int>& labels) {
    Dataset data;
    data.features = features;
    data.labels = Eigen::Map<const Eigen::VectorXi>(labels.data(),
                                                    static_cast<Eigen::Index>(labels.size()));
    data.temperatures.resize(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        data.temperatures(static_cast<Eigen::Index>(i)) = labels[i];
    data.gammas = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(labels.size()));
    data.row_ids.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        data.row_ids[i] = static_cast<std::int64_t>(i);
    data.binning = bin_temperatures({0.0, 1.0, 2.0, 3.0, 4.0}, 0);
    std::vector<double> times(static_cast<std::size_t>(features.cols()));
    for (std::size_t j = 0; j < times.size(); ++j) times[j] = static_cast<double>(j + 1);
    data.schema = FeatureSchema::single_observable(times, ObservableId::SigmaZ);
    return data;
}

FeatureMatrix rows(const std::vector<std::vector<double>>& values) {
    FeatureMatrix m(static_cast<Eigen::Index>(values.size()),
                    static_cast<Eigen::Index>(values.front().size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = 0; j < values[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i][j];
    return m;
}

}  // namespace

TEST_SUITE("knn") {

TEST_CASE("documented tie policies") {
    SUBCASE("equal distances resolve to the lower training row") {
        const Dataset train = toy_dataset(rows({{1.0}, {1.0}}), {2, 1});
        const KnnModel model = fit(train, 1);
        Eigen::RowVectorXd q(1);
        q << 1.0;
        CHECK(predict(model, q).label == 2);
    }
    SUBCASE("vote ties go to the nearest of the tied labels") {
        const Dataset train = toy_dataset(rows({{0.0}, {0.1}, {0.2}, {0.3}}), {3, 1, 1, 3});
        const KnnModel model = fit(train, 4);
        Eigen::RowVectorXd q(1);
        q << 0.0;  // counts 2:2, but label 3 owns the closest point
        CHECK(predict(model, q).label == 3);
        CHECK(predict(model, q).temperature == 3.0);
    }
    SUBCASE("majority beats proximity when counts differ") {
        const Dataset train = toy_dataset(rows({{0.0}, {0.1}, {0.2}}), {4, 1, 1});
        const KnnModel model = fit(train, 3);
        Eigen::RowVectorXd q(1);
        q << 0.0;
        CHECK(predict(model, q).label == 1);
    }
}

TEST_CASE("random instances agree with the reference classifier") {
    SplitMix64 rng(2024);
    for (int instance = 0; instance < 60; ++instance) {
        const int n = 3 + static_cast<int>(rng.next_below(23));
        const int d = 1 + static_cast<int>(rng.next_below(3));
        FeatureMatrix features(n, d);
        std::vector<int> labels(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            // a coarse lattice provokes plenty of exact distance ties
            for (int j = 0; j < d; ++j)
                features(i, j) = 0.5 * static_cast<double>(rng.next_below(4));
            labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(5));
        }
        const Dataset train = toy_dataset(features, labels);
        const int k = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const KnnModel model = fit(train, k);

        for (int q = 0; q < 5; ++q) {
            Eigen::RowVectorXd query(d);
            for (int j = 0; j < d; ++j)
                query(j) = 0.5 * static_cast<double>(rng.next_below(4));
            const Prediction got = predict(model, query);
            const int expected = reference_label(features, train.labels, query, k);
            CHECK(got.label == expected);
            CHECK(got.temperature == train.binning.decode(expected));
        }
    }
}

TEST_CASE("batch prediction matches single prediction on every row") {
    SplitMix64 rng(5);
    FeatureMatrix features(40, 2);
    std::vector<int> labels(40);
    for (int i = 0; i < 40; ++i) {
        features(i, 0) = rng.next_double();
        features(i, 1) = rng.next_double();
        labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(5));
    }
    const Dataset train = toy_dataset(features, labels);
    const KnnModel model = fit(train, 5);

    FeatureMatrix queries(17, 2);
    for (Eigen::Index i = 0; i < queries.size(); ++i) queries(i) = rng.next_double();

    const auto serial = predict_batch(model, queries, 1);
    const auto parallel = predict_batch(model, queries, 4);
    REQUIRE(serial.size() == 17);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        const Prediction one = predict(model, queries.row(static_cast<Eigen::Index>(i)));
        CHECK(serial[i].label == one.label);
        CHECK(parallel[i].label == one.label);
    }
}

TEST_CASE("standardization centers the stored features") {
    FeatureMatrix features = rows({{1.0, 7.0}, {2.0, 7.0}, {3.0, 7.0}});
    const Dataset train = toy_dataset(features, {0, 1, 2});
    const KnnModel model = fit(train, 1, true);

    CHECK(model.standardized);
    CHECK(model.feature_mean(0) == doctest::Approx(2.0));
    // constant column: unit scale instead of a division by zero
    CHECK(model.feature_scale(1) == 1.0);
    CHECK(model.features.col(0).mean() == doctest::Approx(0.0));
    CHECK(model.features.col(1).cwiseAbs().maxCoeff() == 0.0);

    // standardization is monotone per column, so the nearest point to a
    // training row is still that row
    Eigen::RowVectorXd q(2);
    q << 2.0, 7.0;
    CHECK(predict(model, q).label == 1);
}

TEST_CASE("model json round-trips predictions exactly") {
    const auto path = (std::filesystem::temp_directory_path() /
                       ("qthermo_knn_test_" + std::to_string(::getpid()) + ".json"))
                          .string();
    SplitMix64 rng(11);
    FeatureMatrix features(25, 3);
    std::vector<int> labels(25);
    for (int i = 0; i < 25; ++i) {
        for (int j = 0; j < 3; ++j) features(i, j) = 2.0 * rng.next_double() - 1.0;
        labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.next_below(5));
    }
    const Dataset train = toy_dataset(features, labels);

    for (bool standardize : {false, true}) {
        const KnnModel model = fit(train, 3, standardize);
        save_model(path, model);
        const KnnModel back = load_model(path);

        CHECK(back.k == model.k);
        CHECK(back.standardized == model.standardized);
        CHECK(back.n_train() == model.n_train());
        CHECK(back.schema.size() == model.schema.size());
        CHECK(back.binning.bin_centers == model.binning.bin_centers);
        CHECK((back.features - model.features).cwiseAbs().maxCoeff() == 0.0);

        for (int q = 0; q < 10; ++q) {
            Eigen::RowVectorXd query(3);
            for (int j = 0; j < 3; ++j) query(j) = 2.0 * rng.next_double() - 1.0;
            const Prediction a = predict(model, query);
            const Prediction b = predict(back, query);
            CHECK(a.label == b.label);
            CHECK(a.temperature == b.temperature);
        }
    }
    std::filesystem::remove(path);

    CHECK_THROWS_AS((void)load_model("/nonexistent/model.json"), std::runtime_error);
}

TEST_CASE("cross-validation is deterministic and bounds its candidates") {
    SplitMix64 rng(3);
    FeatureMatrix features(50, 2);
    std::vector<int> labels(50);
    for (int i = 0; i < 50; ++i) {
        const int label = i % 5;
        // well-separated clusters with mild jitter: k = 1 should win
        features(i, 0) = label + 0.05 * rng.next_double();
        features(i, 1) = -label + 0.05 * rng.next_double();
        labels[static_cast<std::size_t>(i)] = label;
    }
    const Dataset train = toy_dataset(features, labels);

    const CrossValidationResult a = cross_validate(train, {1, 3, 5, 9}, 5, 42);
    const CrossValidationResult b = cross_validate(train, {1, 3, 5, 9}, 5, 42, 4);
    REQUIRE(a.scores.size() == 4);
    CHECK(a.best_k == b.best_k);
    CHECK(a.scores == b.scores);
    CHECK(a.best_k == 1);
    CHECK(a.scores[0] == 0.0);

    // a different seed deals different folds
    const CrossValidationResult c = cross_validate(train, {1, 3, 5, 9}, 5, 7);
    CHECK(c.best_k == 1);

    CHECK_THROWS_AS((void)cross_validate(train, {1, 3}, 1, 42), std::invalid_argument);
    CHECK_THROWS_AS((void)cross_validate(train, {}, 5, 42), std::invalid_argument);
    CHECK_THROWS_AS((void)cross_validate(train, {45}, 5, 42), std::invalid_argument);
    CHECK_THROWS_AS((void)cross_validate(train, {0}, 5, 42), std::invalid_argument);
}

TEST_CASE("fit and predict reject inconsistent shapes") {
    const Dataset train = toy_dataset(rows({{0.0, 1.0}, {1.0, 0.0}}), {0, 1});
    CHECK_THROWS_AS((void)fit(train, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)fit(train, 3), std::invalid_argument);

    const KnnModel model = fit(train, 1);
    Eigen::RowVectorXd narrow(1);
    narrow << 0.0;
    CHECK_THROWS_AS((void)predict(model, narrow), std::invalid_argument);

    Dataset empty;
    CHECK_THROWS_AS((void)fit(empty, 1), std::invalid_argument);
}

}  // TEST_SUITE
