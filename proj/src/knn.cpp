#include "qthermo/knn.hpp"

#include "qthermo/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

namespace qthermo {

using nlohmann::json;

namespace {

struct Neighbor {
    double dist2;
    std::int64_t index;

    bool operator<(const Neighbor& other) const {
        if (dist2 != other.dist2) return dist2 < other.dist2;
        return index < other.index;
    }
};

// k nearest rows of `features` to `query`, sorted by (distance, row index).
void nearest_neighbors(const FeatureMatrix& features, const Eigen::RowVectorXd& query, int k,
                       std::vector<Neighbor>& scratch, std::vector<Neighbor>& out) {
    const std::int64_t n = features.rows();
    scratch.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        scratch[static_cast<std::size_t>(i)] = {(features.row(i) - query).squaredNorm(), i};
    const auto kth = scratch.begin() + k;
    std::nth_element(scratch.begin(), kth - 1, scratch.end());
    std::sort(scratch.begin(), kth);
    out.assign(scratch.begin(), kth);
}

// Modal label among the first k neighbors; ties go to the label of the
// nearest neighbor holding a tied count.
int vote(const Eigen::VectorXi& labels, const std::vector<Neighbor>& neighbors, int k,
         std::vector<int>& counts_scratch) {
    counts_scratch.clear();
    int best_count = 0;
    for (int i = 0; i < k; ++i) {
        const int label = labels(neighbors[static_cast<std::size_t>(i)].index);
        if (label >= static_cast<int>(counts_scratch.size()))
            counts_scratch.resize(static_cast<std::size_t>(label) + 1, 0);
        best_count = std::max(best_count, ++counts_scratch[static_cast<std::size_t>(label)]);
    }
    for (int i = 0; i < k; ++i) {
        const int label = labels(neighbors[static_cast<std::size_t>(i)].index);
        if (counts_scratch[static_cast<std::size_t>(label)] == best_count) return label;
    }
    return labels(neighbors[0].index);  // unreachable
}

Eigen::RowVectorXd apply_standardization(const KnnModel& model,
                                         const Eigen::Ref<const Eigen::RowVectorXd>& query) {
    Eigen::RowVectorXd q = query;
    if (model.standardized)
        q = (q - model.feature_mean.transpose()).cwiseQuotient(model.feature_scale.transpose());
    return q;
}

}  // namespace

KnnModel fit(const Dataset& train, int k, bool standardize) {
    if (train.rows() == 0) throw std::invalid_argument("fit: empty training set");
    if (k < 1 || k > train.rows())
        throw std::invalid_argument("fit: k must lie in [1, n_train]");
    if (train.schema.size() != static_cast<int>(train.features.cols()))
        throw std::invalid_argument("fit: schema does not match feature width");

    KnnModel model;
    model.features = train.features;
    model.labels = train.labels;
    model.k = k;
    model.binning = train.binning;
    model.schema = train.schema;
    model.standardized = standardize;
    if (standardize) {
        model.feature_mean = train.features.colwise().mean();
        Eigen::VectorXd var =
            (train.features.rowwise() - model.feature_mean.transpose()).array().square()
                .colwise().mean();
        model.feature_scale = var.cwiseSqrt();
        for (Eigen::Index j = 0; j < model.feature_scale.size(); ++j)
            if (model.feature_scale(j) == 0.0) model.feature_scale(j) = 1.0;
        model.features = (model.features.rowwise() - model.feature_mean.transpose());
        model.features.array().rowwise() /= model.feature_scale.transpose().array();
    }
    return model;
}

Prediction predict(const KnnModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& query) {
    if (query.size() != model.features.cols())
        throw std::invalid_argument("predict: query has " + std::to_string(query.size()) +
                                    " features, model expects " +
                                    std::to_string(model.features.cols()));
    const Eigen::RowVectorXd q = apply_standardization(model, query);
    std::vector<Neighbor> scratch, nearest;
    std::vector<int> counts;
    nearest_neighbors(model.features, q, model.k, scratch, nearest);
    const int label = vote(model.labels, nearest, model.k, counts);
    return {label, model.binning.decode(label)};
}

std::vector<Prediction> predict_batch(const KnnModel& model, const FeatureMatrix& queries,
                                      int threads) {
    if (queries.cols() != model.features.cols())
        throw std::invalid_argument("predict_batch: query width " +
                                    std::to_string(queries.cols()) + ", model expects " +
                                    std::to_string(model.features.cols()));
    std::vector<Prediction> out(static_cast<std::size_t>(queries.rows()));
    parallel_for(queries.rows(), threads, [&](std::int64_t i) {
        out[static_cast<std::size_t>(i)] = predict(model, queries.row(i));
    });
    return out;
}

CrossValidationResult cross_validate(const Dataset& train, const std::vector<int>& k_candidates,
                                     int folds, std::uint64_t seed, int threads) {
    if (folds < 2) throw std::invalid_argument("cross_validate: folds must be >= 2");
    if (k_candidates.empty()) throw std::invalid_argument("cross_validate: no k candidates");
    if (train.rows() < folds)
        throw std::invalid_argument("cross_validate: fewer rows than folds");

    const std::int64_t n = train.rows();
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng = substream(mix64(seed ^ 0x464F4C4453ull), 0);  // "FOLDS"
    for (std::int64_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<int> fold_of(static_cast<std::size_t>(n));
    for (std::int64_t p = 0; p < n; ++p)
        fold_of[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] =
            static_cast<int>(p % folds);

    const int k_max = *std::max_element(k_candidates.begin(), k_candidates.end());
    const int k_min = *std::min_element(k_candidates.begin(), k_candidates.end());
    const std::int64_t smallest_train = n - (n / folds + (n % folds ? 1 : 0));
    if (k_min < 1) throw std::invalid_argument("cross_validate: k candidates must be >= 1");
    if (k_max > smallest_train)
        throw std::invalid_argument("cross_validate: largest k exceeds the smallest fold-train size");

    std::vector<double> fold_mse(static_cast<std::size_t>(folds) * k_candidates.size(), 0.0);

    for (int f = 0; f < folds; ++f) {
        std::vector<std::int64_t> train_rows, val_rows;
        for (std::int64_t i = 0; i < n; ++i)
            (fold_of[static_cast<std::size_t>(i)] == f ? val_rows : train_rows).push_back(i);

        FeatureMatrix fold_features(static_cast<std::int64_t>(train_rows.size()),
                                    train.features.cols());
        Eigen::VectorXi fold_labels(static_cast<std::int64_t>(train_rows.size()));
        for (std::size_t i = 0; i < train_rows.size(); ++i) {
            fold_features.row(static_cast<std::int64_t>(i)) = train.features.row(train_rows[i]);
            fold_labels(static_cast<std::int64_t>(i)) = train.labels(train_rows[i]);
        }

        // the neighbor list is shared by every candidate k
        std::vector<double> sq_err(k_candidates.size() * val_rows.size());
        parallel_for(static_cast<std::int64_t>(val_rows.size()), threads, [&](std::int64_t vi) {
            std::vector<Neighbor> scratch, nearest;
            std::vector<int> counts;
            const std::int64_t row = val_rows[static_cast<std::size_t>(vi)];
            nearest_neighbors(fold_features, train.features.row(row), k_max, scratch, nearest);
            for (std::size_t ci = 0; ci < k_candidates.size(); ++ci) {
                const int label = vote(fold_labels, nearest, k_candidates[ci], counts);
                const double err = train.binning.decode(label) - train.temperatures(row);
                sq_err[ci * val_rows.size() + static_cast<std::size_t>(vi)] = err * err;
            }
        });
        for (std::size_t ci = 0; ci < k_candidates.size(); ++ci) {
            double sum = 0.0;
            for (std::size_t vi = 0; vi < val_rows.size(); ++vi)
                sum += sq_err[ci * val_rows.size() + vi];
            fold_mse[static_cast<std::size_t>(f) * k_candidates.size() + ci] =
                sum / static_cast<double>(val_rows.size());
        }
    }

    CrossValidationResult result;
    result.scores.assign(k_candidates.size(), 0.0);
    for (int f = 0; f < folds; ++f)
        for (std::size_t ci = 0; ci < k_candidates.size(); ++ci)
            result.scores[ci] +=
                fold_mse[static_cast<std::size_t>(f) * k_candidates.size() + ci] / folds;

    double best_score = std::numeric_limits<double>::infinity();
    result.best_k = k_candidates.front();
    for (std::size_t ci = 0; ci < k_candidates.size(); ++ci) {
        const int k = k_candidates[ci];
        if (result.scores[ci] < best_score ||
            (result.scores[ci] == best_score && k < result.best_k)) {
            best_score = result.scores[ci];
            result.best_k = k;
        }
    }
    return result;
}

void save_model(const std::string& path, const KnnModel& model) {
    json j{
        {"format_version", "1"},
        {"kind", "knn_model"},
        {"k", model.k},
        {"standardized", model.standardized},
        {"schema", json::array()},
        {"binning",
         {{"per_value", model.binning.per_value},
          {"edges", model.binning.bin_edges},
          {"centers", model.binning.bin_centers}}},
        {"n_train", model.n_train()},
        {"n_features", model.n_features()},
        {"labels", std::vector<int>(model.labels.data(), model.labels.data() + model.labels.size())},
    };
    for (const auto& e : model.schema.entries)
        j["schema"].push_back({{"time", e.time}, {"observable", to_string(e.observable)}});
    std::vector<double> flat(model.features.data(),
                             model.features.data() + model.features.size());
    j["features"] = flat;  // row-major
    if (model.standardized) {
        j["feature_mean"] = std::vector<double>(model.feature_mean.data(),
                                                model.feature_mean.data() + model.feature_mean.size());
        j["feature_scale"] = std::vector<double>(
            model.feature_scale.data(), model.feature_scale.data() + model.feature_scale.size());
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_model: cannot open " + path);
    out << j.dump() << "\n";
}

KnnModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_model: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("load_model: bad JSON: " + std::string(e.what()));
    }
    if (j.value("format_version", "") != "1")
        throw std::runtime_error("load_model: unsupported format_version");
    if (j.value("kind", "") != "knn_model")
        throw std::runtime_error("load_model: not a model file");

    KnnModel model;
    model.k = j.at("k").get<int>();
    model.standardized = j.at("standardized").get<bool>();
    for (const auto& e : j.at("schema"))
        model.schema.entries.push_back(
            {e.at("time").get<double>(), observable_from_string(e.at("observable"))});
    model.binning.per_value = j.at("binning").at("per_value").get<bool>();
    model.binning.bin_edges = j.at("binning").at("edges").get<std::vector<double>>();
    model.binning.bin_centers = j.at("binning").at("centers").get<std::vector<double>>();

    const auto n = j.at("n_train").get<std::int64_t>();
    const auto d = j.at("n_features").get<int>();
    const auto labels = j.at("labels").get<std::vector<int>>();
    const auto flat = j.at("features").get<std::vector<double>>();
    if (static_cast<std::int64_t>(labels.size()) != n ||
        static_cast<std::int64_t>(flat.size()) != n * d)
        throw std::runtime_error("load_model: inconsistent dimensions");
    model.labels.resize(n);
    for (std::int64_t i = 0; i < n; ++i) model.labels(i) = labels[static_cast<std::size_t>(i)];
    model.features.resize(n, d);
    std::copy(flat.begin(), flat.end(), model.features.data());
    if (model.standardized) {
        const auto mean = j.at("feature_mean").get<std::vector<double>>();
        const auto scale = j.at("feature_scale").get<std::vector<double>>();
        model.feature_mean = Eigen::Map<const Eigen::VectorXd>(mean.data(),
                                                               static_cast<Eigen::Index>(mean.size()));
        model.feature_scale = Eigen::Map<const Eigen::VectorXd>(
            scale.data(), static_cast<Eigen::Index>(scale.size()));
    }
    if (model.k < 1 || model.k > model.n_train())
        throw std::runtime_error("load_model: k out of range");
    return model;
}

}  // namespace qthermo
