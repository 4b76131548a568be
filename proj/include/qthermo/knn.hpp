// knn.hpp — k-nearest-neighbors temperature classifier
//
// Exact linear-scan search over squared Euclidean distances (monotone in the
// Euclidean metric). Deterministic tie policy: equal distances order by
// training-row index; vote ties go to the label of the nearest neighbor
// among the tied labels. No feature scaling by default (all features are
// Pauli expectations in [-1, 1]); optional z-scoring behind a flag.

#pragma once

#include "qthermo/dataset.hpp"

#include <string>
#include <vector>

namespace qthermo {

struct KnnModel {
    FeatureMatrix features;   // n_train x N_d
    Eigen::VectorXi labels;   // n_train
    int k{1};
    TemperatureBinning binning;
    FeatureSchema schema;
    bool standardized{false};
    Eigen::VectorXd feature_mean;   // set when standardized
    Eigen::VectorXd feature_scale;  // set when standardized

    std::int64_t n_train() const { return features.rows(); }
    int n_features() const { return static_cast<int>(features.cols()); }
};

struct Prediction {
    int label{0};
    double temperature{0.0};
};

KnnModel fit(const Dataset& train, int k, bool standardize = false);

Prediction predict(const KnnModel& model, const Eigen::Ref<const Eigen::RowVectorXd>& query);

std::vector<Prediction> predict_batch(const KnnModel& model, const FeatureMatrix& queries,
                                      int threads = 0);

struct CrossValidationResult {
    int best_k{1};
    std::vector<double> scores;  // one per candidate, decoded-temperature MSE
};

// Deterministic fold assignment from the seed; score per k is the mean over
// folds of the MSE between decoded predicted temperatures and the true ones.
// Ties resolve to the smaller k.
CrossValidationResult cross_validate(const Dataset& train, const std::vector<int>& k_candidates,
                                     int folds, std::uint64_t seed, int threads = 0);

// JSON persistence; round-trips preserve predictions exactly.
void save_model(const std::string& path, const KnnModel& model);
KnnModel load_model(const std::string& path);

}  // namespace qthermo
