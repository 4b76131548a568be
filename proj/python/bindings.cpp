// _core — python bindings for the probe-thermometry pipeline
//
// The surface mirrors the main C++ operations: single-point trajectories,
// (T, gamma) dataset generation and splitting, the KNN classifier with its
// cross-validation and JSON persistence, scenario evaluation, and the
// figure-reproduction driver. Matrices cross the boundary as numpy arrays.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qthermo/evaluation.hpp"
#include "qthermo/scenarios.hpp"

#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace qthermo;

namespace {

ProbeState probe_from_string(const std::string& name) {
    if (name == "plus") return plus_state();
    if (name == "ground") return ground_state();
    if (name == "mixed") return maximally_mixed_state();
    throw std::invalid_argument("unknown probe '" + name +
                                "' (expected plus, ground or mixed)");
}

GridConfig make_grid(const std::string& model, double omega, double qubit_gap, int cutoff,
                     double T_min, double T_max, int T_count, double gamma_min,
                     double gamma_max, int gamma_count, const std::vector<double>& times,
                     const std::string& observable, const std::string& probe,
                     double noise_rel_std, const std::string& noise_target,
                     double split_fraction, int n_bins, std::uint64_t seed) {
    GridConfig config;
    config.model = model_from_string(model);
    config.omega = omega;
    config.qubit_gap = qubit_gap;
    config.cutoff = cutoff;
    config.T_range = {T_min, T_max, T_count};
    config.gamma_range = {gamma_min, gamma_max, gamma_count};
    config.schema =
        FeatureSchema::single_observable(times, observable_from_string(observable));
    config.probe = probe_from_string(probe);
    config.noise_rel_std = noise_rel_std;
    config.noise_target = noise_target_from_string(noise_target);
    config.split_fraction = split_fraction;
    config.n_bins = n_bins;
    config.seed = seed;
    return config;
}

std::vector<std::string> schema_observables(const FeatureSchema& schema) {
    std::vector<std::string> out;
    out.reserve(schema.entries.size());
    for (const auto& e : schema.entries) out.push_back(to_string(e.observable));
    return out;
}

std::vector<double> schema_times(const FeatureSchema& schema) {
    std::vector<double> out;
    out.reserve(schema.entries.size());
    for (const auto& e : schema.entries) out.push_back(e.time);
    return out;
}

py::dict report_to_dict(const EvalReport& report) {
    const std::size_t n = report.pairs.size();
    Eigen::VectorXd t_pred(static_cast<Eigen::Index>(n)), t_real(static_cast<Eigen::Index>(n)),
        gammas(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        t_pred(static_cast<Eigen::Index>(i)) = report.pairs[i].T_pred;
        t_real(static_cast<Eigen::Index>(i)) = report.pairs[i].T_real;
        gammas(static_cast<Eigen::Index>(i)) = report.pairs[i].gamma;
    }
    py::dict out;
    out["mse"] = report.mse;
    out["chosen_k"] = report.chosen_k;
    out["n_val"] = report.n_val();
    out["T_pred"] = t_pred;
    out["T_real"] = t_real;
    out["gamma"] = gammas;
    if (!report.cv_candidates.empty()) {
        out["cv_candidates"] = report.cv_candidates;
        out["cv_scores"] = report.cv_scores;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "qubit-probe thermometry: simulation, datasets and KNN classification";

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("features",
                               [](const Dataset& d) -> FeatureMatrix { return d.features; })
        .def_property_readonly(
            "temperatures", [](const Dataset& d) -> Eigen::VectorXd { return d.temperatures; })
        .def_property_readonly("gammas",
                               [](const Dataset& d) -> Eigen::VectorXd { return d.gammas; })
        .def_property_readonly("labels",
                               [](const Dataset& d) -> Eigen::VectorXi { return d.labels; })
        .def_property_readonly("times", [](const Dataset& d) { return schema_times(d.schema); })
        .def_property_readonly("observables",
                               [](const Dataset& d) { return schema_observables(d.schema); })
        .def_property_readonly("n_features", &Dataset::n_features)
        .def_property_readonly("n_classes",
                               [](const Dataset& d) { return d.binning.num_classes(); })
        .def("decode", [](const Dataset& d, int label) { return d.binning.decode(label); },
             py::arg("label"), "temperature represented by a class label")
        .def("__len__", &Dataset::rows)
        .def("__repr__", [](const Dataset& d) {
            return "<qthermo.Dataset rows=" + std::to_string(d.rows()) +
                   " n_features=" + std::to_string(d.n_features()) + ">";
        });

    py::class_<KnnModel>(m, "KnnModel")
        .def_property_readonly("k", [](const KnnModel& m_) { return m_.k; })
        .def_property_readonly("n_train", &KnnModel::n_train)
        .def_property_readonly("n_features", &KnnModel::n_features)
        .def_property_readonly("standardized",
                               [](const KnnModel& m_) { return m_.standardized; })
        .def(
            "predict",
            [](const KnnModel& model, const FeatureMatrix& queries, int threads) {
                const auto predictions = predict_batch(model, queries, threads);
                const auto n = static_cast<Eigen::Index>(predictions.size());
                Eigen::VectorXi labels(n);
                Eigen::VectorXd temperatures(n);
                for (Eigen::Index i = 0; i < n; ++i) {
                    labels(i) = predictions[static_cast<std::size_t>(i)].label;
                    temperatures(i) = predictions[static_cast<std::size_t>(i)].temperature;
                }
                return std::make_pair(labels, temperatures);
            },
            py::arg("queries"), py::arg("threads") = 0,
            "classify feature rows; returns (labels, temperatures)")
        .def("__repr__", [](const KnnModel& m_) {
            return "<qthermo.KnnModel k=" + std::to_string(m_.k) +
                   " n_train=" + std::to_string(m_.n_train()) + ">";
        });

    m.def(
        "trajectory",
        [](double temperature, double gamma, const std::vector<double>& times,
           const std::string& observable, const std::string& model, double omega,
           double qubit_gap, int cutoff, const std::string& probe) -> Eigen::VectorXd {
            HamiltonianSpec spec{model_from_string(model), omega, qubit_gap, gamma, cutoff};
            return trajectory(spec, temperature, probe_from_string(probe),
                              FeatureSchema::single_observable(
                                  times, observable_from_string(observable)));
        },
        py::arg("temperature"), py::arg("gamma") = 1.0,
        py::arg("times") = canonical_times(), py::arg("observable") = "sz",
        py::arg("model") = "jc", py::arg("omega") = 1.0, py::arg("qubit_gap") = 1.0,
        py::arg("cutoff") = 60, py::arg("probe") = "plus",
        "probe expectation values for one (temperature, coupling) point");

    m.def(
        "generate",
        [](const std::string& model, double omega, double qubit_gap, int cutoff, double T_min,
           double T_max, int T_count, double gamma_min, double gamma_max, int gamma_count,
           const std::vector<double>& times, const std::string& observable,
           const std::string& probe, double noise_rel_std, const std::string& noise_target,
           double split_fraction, int n_bins, std::uint64_t seed, int threads) {
            return generate(make_grid(model, omega, qubit_gap, cutoff, T_min, T_max, T_count,
                                      gamma_min, gamma_max, gamma_count, times, observable,
                                      probe, noise_rel_std, noise_target, split_fraction,
                                      n_bins, seed),
                            threads);
        },
        py::arg("model") = "jc", py::arg("omega") = 1.0, py::arg("qubit_gap") = 1.0,
        py::arg("cutoff") = 60, py::arg("T_min") = 0.1, py::arg("T_max") = 2.0,
        py::arg("T_count") = 1000, py::arg("gamma_min") = 0.1, py::arg("gamma_max") = 2.0,
        py::arg("gamma_count") = 100, py::arg("times") = canonical_times(),
        py::arg("observable") = "sz", py::arg("probe") = "plus",
        py::arg("noise_rel_std") = 0.03, py::arg("noise_target") = "validation_only",
        py::arg("split_fraction") = 0.7, py::arg("n_bins") = 0, py::arg("seed") = 42,
        py::arg("threads") = 0, "labeled feature rows over a (temperature, coupling) grid");

    m.def(
        "split",
        [](const Dataset& dataset, double fraction, std::uint64_t seed) {
            SplitResult result = split(dataset, fraction, seed);
            return std::make_pair(std::move(result.train), std::move(result.validation));
        },
        py::arg("dataset"), py::arg("fraction") = 0.7, py::arg("seed") = 42,
        "seeded train/validation partition; applies the dataset's noise policy");

    m.def("project", &project, py::arg("dataset"), py::arg("indices"),
          "restrict a dataset to the selected feature columns");

    m.def("fit", &fit, py::arg("train"), py::arg("k"), py::arg("standardize") = false,
          "build a KNN classifier from a training dataset");

    m.def(
        "cross_validate",
        [](const Dataset& train, const std::vector<int>& candidates, int folds,
           std::uint64_t seed, int threads) {
            const CrossValidationResult result =
                cross_validate(train, candidates, folds, seed, threads);
            return std::make_pair(result.best_k, result.scores);
        },
        py::arg("train"), py::arg("candidates"), py::arg("folds") = 5, py::arg("seed") = 42,
        py::arg("threads") = 0, "pick k by k-fold MSE; returns (best_k, scores)");

    m.def("save_model", &save_model, py::arg("path"), py::arg("model"));
    m.def("load_model", &load_model, py::arg("path"));

    m.def(
        "evaluate",
        [](const Dataset& train, const Dataset& validation, int k,
           const std::vector<int>& cv_candidates, int cv_folds, bool standardize,
           int threads) {
            KnnSettings settings;
            settings.k = k;
            settings.cv_candidates = cv_candidates;
            settings.cv_folds = cv_folds;
            settings.standardize = standardize;
            return report_to_dict(
                evaluate_scenario(train, validation, settings, {}, threads));
        },
        py::arg("train"), py::arg("validation"), py::arg("k") = 1,
        py::arg("cv_candidates") = std::vector<int>{}, py::arg("cv_folds") = 5,
        py::arg("standardize") = false, py::arg("threads") = 0,
        "fit (cross-validating when candidates are given), predict and score");

    m.def(
        "reproduce",
        [](const std::string& figure, const std::string& out_dir, const std::string& scale,
           std::uint64_t seed, int threads) {
            ReproduceOptions options;
            options.scale = scale_from_string(scale);
            options.seed = seed;
            options.threads = threads;
            options.out_dir = out_dir;
            return reproduce(figure, options);
        },
        py::arg("figure"), py::arg("out_dir") = ".", py::arg("scale") = "desk",
        py::arg("seed") = 42, py::arg("threads") = 0,
        "write the plot data behind a figure id; returns the file paths");

    m.def("reproduce_ids", [] { return reproduce_ids(); },
          "figure ids understood by reproduce()");
    m.def("canonical_times", &canonical_times,
          "observation times used by the figure reproductions");
}
