// qthermo — command-line front end for the probe-thermometry pipeline.
//
// Subcommands: generate, train, predict, evaluate, cv, reproduce.
// Human-readable progress goes to stderr; machine output (CSV/JSON) goes to
// stdout or to the files named by --out, so pipelines stay clean.
// Exit codes: 0 success, 1 configuration error, 2 numerical or data error.
//
// Configs are JSON documents with a required format_version; unknown keys
// are rejected so typos fail loudly. Command-line flags override config
// fields. One seed drives the whole run (grid identity, split, noise, CV).

#include "qthermo/dataset_io.hpp"
#include "qthermo/format.hpp"
#include "qthermo/parallel.hpp"
#include "qthermo/scenarios.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qthermo;

const std::vector<int> kDefaultCvCandidates{1, 3, 5, 9, 15, 25, 45};

// Everything a run can configure; the JSON config file mirrors this.
struct RunConfig {
    GridConfig grid;
    KnnSettings knn;
    std::uint64_t seed{42};
    int threads{0};
    std::string scale{"desk"};
    std::string dataset_out{"dataset.csv"};
    std::string model_out{"model.json"};
    std::string report_out;
    std::string pairs_out;
    std::string out_dir{"."};
};

void reject_unknown_keys(const json& j, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw std::invalid_argument(where + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) throw std::invalid_argument(where + ": unknown key '" + it.key() + "'");
    }
}

GridRange range_from_json(const json& j, const std::string& where) {
    reject_unknown_keys(j, where, {"min", "max", "count"});
    GridRange r;
    r.min = j.at("min").get<double>();
    r.max = j.value("max", r.min);
    r.count = j.value("count", 1);
    return r;
}

ProbeState probe_from_string(const std::string& s) {
    if (s == "plus") return plus_state();
    if (s == "ground") return ground_state();
    if (s == "mixed") return maximally_mixed_state();
    throw std::invalid_argument("unknown probe '" + s + "' (expected plus, ground or mixed)");
}

void apply_grid_json(GridConfig& grid, const json& j) {
    reject_unknown_keys(j, "grid",
                        {"model", "omega", "qubit_gap", "cutoff", "temperature", "gamma", "times",
                         "observable", "schema", "probe", "noise", "split_fraction", "n_bins",
                         "tail_tol"});
    if (j.contains("model")) grid.model = model_from_string(j.at("model").get<std::string>());
    grid.omega = j.value("omega", grid.omega);
    grid.qubit_gap = j.value("qubit_gap", grid.qubit_gap);
    grid.cutoff = j.value("cutoff", grid.cutoff);
    if (j.contains("temperature"))
        grid.T_range = range_from_json(j.at("temperature"), "grid.temperature");
    if (j.contains("gamma")) grid.gamma_range = range_from_json(j.at("gamma"), "grid.gamma");

    if (j.contains("schema") && (j.contains("times") || j.contains("observable")))
        throw std::invalid_argument("grid: give either 'schema' or 'times'/'observable', not both");
    if (j.contains("schema")) {
        grid.schema.entries.clear();
        for (const auto& e : j.at("schema")) {
            reject_unknown_keys(e, "grid.schema[]", {"time", "observable"});
            grid.schema.entries.push_back(
                {e.at("time").get<double>(),
                 observable_from_string(e.at("observable").get<std::string>())});
        }
    } else if (j.contains("times")) {
        const auto times = j.at("times").get<std::vector<double>>();
        const auto obs = observable_from_string(j.value("observable", "sz"));
        grid.schema = FeatureSchema::single_observable(times, obs);
    } else if (j.contains("observable")) {
        const auto obs = observable_from_string(j.at("observable").get<std::string>());
        grid.schema = FeatureSchema::single_observable(canonical_times(), obs);
    }

    if (j.contains("probe")) grid.probe = probe_from_string(j.at("probe").get<std::string>());
    if (j.contains("noise")) {
        const json& n = j.at("noise");
        reject_unknown_keys(n, "grid.noise", {"rel_std", "target"});
        grid.noise_rel_std = n.value("rel_std", grid.noise_rel_std);
        if (n.contains("target"))
            grid.noise_target = noise_target_from_string(n.at("target").get<std::string>());
    }
    grid.split_fraction = j.value("split_fraction", grid.split_fraction);
    grid.n_bins = j.value("n_bins", grid.n_bins);
    grid.tail_tol = j.value("tail_tol", grid.tail_tol);
}

void apply_knn_json(KnnSettings& knn, const json& j) {
    reject_unknown_keys(j, "knn", {"k", "cv_candidates", "folds", "standardize"});
    knn.k = j.value("k", knn.k);
    if (j.contains("cv_candidates"))
        knn.cv_candidates = j.at("cv_candidates").get<std::vector<int>>();
    knn.cv_folds = j.value("folds", knn.cv_folds);
    knn.standardize = j.value("standardize", knn.standardize);
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config: bad JSON in " + path + ": " + e.what());
    }
    reject_unknown_keys(j, "config",
                        {"format_version", "grid", "knn", "outputs", "seed", "threads", "scale"});
    if (j.value("format_version", "") != "1")
        throw std::invalid_argument("config: format_version must be \"1\"");

    RunConfig rc;
    if (j.contains("grid")) apply_grid_json(rc.grid, j.at("grid"));
    if (j.contains("knn")) apply_knn_json(rc.knn, j.at("knn"));
    rc.seed = j.value("seed", rc.seed);
    rc.threads = j.value("threads", rc.threads);
    rc.scale = j.value("scale", rc.scale);
    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        reject_unknown_keys(o, "outputs", {"dataset", "model", "report", "pairs", "dir"});
        rc.dataset_out = o.value("dataset", rc.dataset_out);
        rc.model_out = o.value("model", rc.model_out);
        rc.report_out = o.value("report", rc.report_out);
        rc.pairs_out = o.value("pairs", rc.pairs_out);
        rc.out_dir = o.value("dir", rc.out_dir);
    }
    return rc;
}

json read_manifest(const std::string& csv_path) {
    std::ifstream in(manifest_path_for(csv_path));
    if (!in) throw std::runtime_error("missing manifest " + manifest_path_for(csv_path));
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error("bad manifest for " + csv_path + ": " + e.what());
    }
}

// "data.csv" -> "data.train.csv"
std::string sibling_path(const std::string& path, const std::string& tag) {
    fs::path p(path);
    const std::string ext = p.extension().string();
    fs::path out = p.parent_path() / (p.stem().string() + "." + tag + (ext.empty() ? "" : ext));
    return out.string();
}

Eigen::RowVectorXd parse_inline_vector(const std::string& text) {
    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string field = text.substr(pos, comma - pos);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != field.size() || field.empty())
            throw std::invalid_argument("--vector: bad number '" + field + "'");
        vals.push_back(v);
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) row(static_cast<Eigen::Index>(i)) = vals[i];
    return row;
}

void write_predictions(std::ostream& os, const std::vector<Prediction>& preds) {
    os << "label,temperature\n";
    for (const auto& p : preds) os << p.label << "," << fmt_double(p.temperature) << "\n";
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    CLI::App* cmd{nullptr};
    std::string config, out;
    std::uint64_t seed{42};
    int threads{0};
    bool dry_run{false};
    bool emit_split{false};
};

int cmd_generate(const GenerateArgs& a) {
    RunConfig rc = a.config.empty() ? RunConfig{} : load_run_config(a.config);
    if (a.cmd->count("--seed")) rc.seed = a.seed;
    if (a.cmd->count("--threads")) rc.threads = a.threads;
    if (a.cmd->count("--out")) rc.dataset_out = a.out;
    rc.grid.seed = rc.seed;
    rc.grid.validate();

    if (a.dry_run) {
        const std::int64_t rows = rc.grid.rows();
        const auto d = static_cast<std::int64_t>(rc.grid.schema.size());
        // features + temperature/gamma (8 B each) + label (4 B) + row id (8 B)
        const std::int64_t bytes = rows * (d * 8 + 28);
        json j{{"rows", rows}, {"n_features", d}, {"estimated_bytes", bytes}};
        std::cout << j.dump() << "\n";
        return 0;
    }

    std::cerr << "generate: simulating " << rc.grid.rows() << " rows ("
              << to_string(rc.grid.model) << ", " << rc.grid.schema.size() << " features)\n";
    const Dataset dataset = generate(rc.grid, rc.threads);
    save_dataset(rc.dataset_out, dataset, rc.grid, {"full", false});
    std::cerr << "generate: wrote " << rc.dataset_out << "\n";

    if (a.emit_split) {
        const SplitResult parts = split(dataset, rc.grid.split_fraction, rc.grid.seed);
        const bool noisy = rc.grid.noise_rel_std > 0.0;
        const std::string train_path = sibling_path(rc.dataset_out, "train");
        const std::string val_path = sibling_path(rc.dataset_out, "validation");
        save_dataset(train_path, parts.train, rc.grid,
                     {"train", noisy && rc.grid.noise_target == NoiseTarget::Both});
        save_dataset(val_path, parts.validation, rc.grid,
                     {"validation", noisy && rc.grid.noise_target != NoiseTarget::None});
        std::cerr << "generate: wrote " << train_path << " (" << parts.train.rows() << " rows), "
                  << val_path << " (" << parts.validation.rows() << " rows)\n";
    }
    return 0;
}

// ------------------------------------------------------------------- train

struct TrainArgs {
    CLI::App* cmd{nullptr};
    std::string config, data, out;
    int k{5};
    std::vector<int> cv;
    int folds{5};
    bool standardize{false};
    std::uint64_t seed{42};
    int threads{0};
};

KnnSettings knn_settings_from_args(const RunConfig& rc, const CLI::App* cmd, int k,
                                   const std::vector<int>& cv, int folds, bool standardize) {
    KnnSettings s = rc.knn;
    if (cmd->count("--k")) {
        s.k = k;
        s.cv_candidates.clear();
    }
    if (cmd->count("--cv")) s.cv_candidates = cv;
    if (cmd->count("--folds")) s.cv_folds = folds;
    if (cmd->count("--standardize")) s.standardize = standardize;
    return s;
}

int cmd_train(const TrainArgs& a) {
    RunConfig rc = a.config.empty() ? RunConfig{} : load_run_config(a.config);
    if (a.cmd->count("--threads")) rc.threads = a.threads;
    if (a.cmd->count("--out")) rc.model_out = a.out;
    const KnnSettings settings =
        knn_settings_from_args(rc, a.cmd, a.k, a.cv, a.folds, a.standardize);

    const Dataset train = load_dataset(a.data);
    const std::uint64_t cv_seed = a.cmd->count("--seed") ? a.seed : train.seed;

    int k = settings.k;
    if (!settings.cv_candidates.empty()) {
        const CrossValidationResult cv =
            cross_validate(train, settings.cv_candidates, settings.cv_folds, cv_seed, rc.threads);
        k = cv.best_k;
        json j{{"best_k", cv.best_k},
               {"candidates", settings.cv_candidates},
               {"scores", cv.scores}};
        std::cout << j.dump() << "\n";
        std::cerr << "train: cross-validation chose k=" << k << "\n";
    }
    const KnnModel model = fit(train, k, settings.standardize);
    save_model(rc.model_out, model);
    std::cerr << "train: wrote model (k=" << k << ", n_train=" << model.n_train() << ") -> "
              << rc.model_out << "\n";
    return 0;
}

// ----------------------------------------------------------------- predict

struct PredictArgs {
    CLI::App* cmd{nullptr};
    std::string model, data, vector_text, out;
    int threads{0};
};

int cmd_predict(const PredictArgs& a) {
    if (a.data.empty() && a.vector_text.empty())
        throw std::invalid_argument("predict: give --data or --vector");
    const KnnModel model = load_model(a.model);
    FeatureMatrix observations;
    if (!a.vector_text.empty()) {
        const Eigen::RowVectorXd row = parse_inline_vector(a.vector_text);
        observations.resize(1, row.size());
        observations.row(0) = row;
    } else {
        observations = load_feature_rows(a.data);
    }
    if (observations.cols() != model.n_features())
        throw std::runtime_error("predict: model expects N_d = " +
                                 std::to_string(model.n_features()) +
                                 " features per observation, got " +
                                 std::to_string(observations.cols()));

    const std::vector<Prediction> preds = predict_batch(model, observations, a.threads);
    if (a.out.empty()) {
        write_predictions(std::cout, preds);
    } else {
        std::ofstream out(a.out);
        if (!out) throw std::runtime_error("predict: cannot open " + a.out);
        write_predictions(out, preds);
        std::cerr << "predict: wrote " << preds.size() << " predictions -> " << a.out << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
    CLI::App* cmd{nullptr};
    std::string config, train_path, val_path, out, pairs, name{"evaluate"};
    int k{5};
    std::vector<int> cv;
    int folds{5};
    bool standardize{false};
    int threads{0};
};

int cmd_evaluate(const EvaluateArgs& a) {
    RunConfig rc = a.config.empty() ? RunConfig{} : load_run_config(a.config);
    if (a.cmd->count("--threads")) rc.threads = a.threads;
    if (a.cmd->count("--out")) rc.report_out = a.out;
    if (a.cmd->count("--pairs")) rc.pairs_out = a.pairs;
    const KnnSettings settings =
        knn_settings_from_args(rc, a.cmd, a.k, a.cv, a.folds, a.standardize);

    const Dataset train = load_dataset(a.train_path);
    const Dataset validation = load_dataset(a.val_path);

    // scenario context comes from the dataset manifest
    const json manifest = read_manifest(a.train_path);
    ScenarioDescriptor desc;
    desc.name = a.name;
    desc.model = model_from_string(manifest.at("model").get<std::string>());
    desc.gamma_known = manifest.at("gamma").at("count").get<int>() == 1;

    const EvalReport report = evaluate_scenario(train, validation, settings, desc, rc.threads);
    if (!rc.pairs_out.empty()) save_pairs_csv(rc.pairs_out, report);
    if (!rc.report_out.empty()) {
        save_report(rc.report_out, report);
        std::cerr << "evaluate: wrote " << rc.report_out << "\n";
    } else {
        json j{{"scenario", desc.name},
               {"mse", report.mse},
               {"n_val", report.n_val()},
               {"chosen_k", report.chosen_k}};
        std::cout << j.dump() << "\n";
    }
    std::cerr << "evaluate: MSE = " << report.mse << " over " << report.n_val()
              << " validation points (k=" << report.chosen_k << ")\n";
    return 0;
}

// ---------------------------------------------------------------------- cv

struct CvArgs {
    CLI::App* cmd{nullptr};
    std::string data;
    std::vector<int> candidates{kDefaultCvCandidates};
    int folds{5};
    std::uint64_t seed{42};
    int threads{0};
};

int cmd_cv(const CvArgs& a) {
    const Dataset train = load_dataset(a.data);
    const std::uint64_t seed = a.cmd->count("--seed") ? a.seed : train.seed;
    const CrossValidationResult result =
        cross_validate(train, a.candidates, a.folds, seed, a.threads);
    json j{{"best_k", result.best_k}, {"candidates", a.candidates}, {"scores", result.scores}};
    std::cout << j.dump() << "\n";
    return 0;
}

// --------------------------------------------------------------- reproduce

struct ReproduceArgs {
    CLI::App* cmd{nullptr};
    std::string figure, out_dir{"."}, scale{"desk"};
    std::uint64_t seed{42};
    int threads{0};
};

int cmd_reproduce(const ReproduceArgs& a) {
    ReproduceOptions options;
    options.scale = scale_from_string(a.scale);
    options.seed = a.seed;
    options.threads = a.threads;
    options.out_dir = a.out_dir;
    std::cerr << "reproduce: figure " << a.figure << " at " << a.scale << " scale\n";
    const std::vector<std::string> files = reproduce(a.figure, options);
    for (const auto& f : files) std::cout << f << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"probe-based quantum thermometry via KNN classification"};
    app.require_subcommand(1);

    const char* threads_help = "worker threads (0 = QTHERMO_THREADS env var, else all cores)";

    GenerateArgs gen;
    gen.cmd = app.add_subcommand("generate",
                                 "simulate a (T, gamma) grid into a labeled CSV dataset");
    gen.cmd->add_option("--config", gen.config, "JSON run config");
    gen.cmd->add_option("--out", gen.out, "output CSV path (default dataset.csv)");
    gen.cmd->add_option("--seed", gen.seed, "RNG seed for split/noise streams");
    gen.cmd->add_option("--threads", gen.threads, threads_help);
    gen.cmd->add_flag("--dry-run", gen.dry_run, "print row count and estimated memory, write nothing");
    gen.cmd->add_flag("--emit-split", gen.emit_split,
                      "also write .train/.validation files with noise applied");

    TrainArgs tr;
    tr.cmd = app.add_subcommand("train", "fit a KNN model on a dataset file");
    tr.cmd->add_option("--config", tr.config, "JSON run config");
    tr.cmd->add_option("--data", tr.data, "training dataset CSV")->required();
    tr.cmd->add_option("--out", tr.out, "model JSON path (default model.json)");
    auto* opt_k = tr.cmd->add_option("--k", tr.k, "fixed neighbour count");
    tr.cmd->add_option("--cv", tr.cv, "comma-separated k candidates for cross-validation")
        ->delimiter(',')
        ->excludes(opt_k);
    tr.cmd->add_option("--folds", tr.folds, "cross-validation folds (default 5)");
    tr.cmd->add_flag("--standardize", tr.standardize, "z-score features before distances");
    tr.cmd->add_option("--seed", tr.seed, "fold-assignment seed (default: dataset seed)");
    tr.cmd->add_option("--threads", tr.threads, threads_help);

    PredictArgs pr;
    pr.cmd = app.add_subcommand("predict", "classify observations with a saved model");
    pr.cmd->add_option("--model", pr.model, "model JSON path")->required();
    auto* opt_data = pr.cmd->add_option("--data", pr.data, "observations CSV");
    pr.cmd->add_option("--vector", pr.vector_text, "one inline observation, comma-separated")
        ->excludes(opt_data);
    pr.cmd->add_option("--out", pr.out, "output CSV path (default: stdout)");
    pr.cmd->add_option("--threads", pr.threads, threads_help);

    EvaluateArgs ev;
    ev.cmd = app.add_subcommand("evaluate", "score a train/validation dataset pair");
    ev.cmd->add_option("--config", ev.config, "JSON run config");
    ev.cmd->add_option("--train", ev.train_path, "training dataset CSV")->required();
    ev.cmd->add_option("--validation", ev.val_path, "validation dataset CSV")->required();
    ev.cmd->add_option("--out", ev.out, "report JSON path (default: summary to stdout)");
    ev.cmd->add_option("--pairs", ev.pairs, "also write a T_real,T_pred CSV");
    ev.cmd->add_option("--name", ev.name, "scenario name recorded in the report");
    auto* opt_ek = ev.cmd->add_option("--k", ev.k, "fixed neighbour count");
    ev.cmd->add_option("--cv", ev.cv, "comma-separated k candidates for cross-validation")
        ->delimiter(',')
        ->excludes(opt_ek);
    ev.cmd->add_option("--folds", ev.folds, "cross-validation folds (default 5)");
    ev.cmd->add_flag("--standardize", ev.standardize, "z-score features before distances");
    ev.cmd->add_option("--threads", ev.threads, threads_help);

    CvArgs cv;
    cv.cmd = app.add_subcommand("cv", "cross-validate k on a dataset file");
    cv.cmd->add_option("--data", cv.data, "training dataset CSV")->required();
    cv.cmd->add_option("--cv", cv.candidates, "comma-separated k candidates")->delimiter(',');
    cv.cmd->add_option("--folds", cv.folds, "folds (default 5)");
    cv.cmd->add_option("--seed", cv.seed, "fold-assignment seed (default: dataset seed)");
    cv.cmd->add_option("--threads", cv.threads, threads_help);

    ReproduceArgs rep;
    rep.cmd = app.add_subcommand("reproduce", "rebuild the plot data behind a figure");
    rep.cmd->add_option("figure", rep.figure, "figure id: 2a, 2b, 2c, 2d, 2e, 3maps, 3h")
        ->required();
    rep.cmd->add_option("--out", rep.out_dir, "output directory (default .)");
    rep.cmd->add_option("--scale", rep.scale, "grid scale: desk or full (default desk)");
    rep.cmd->add_option("--seed", rep.seed, "run seed (default 42)");
    rep.cmd->add_option("--threads", rep.threads, threads_help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen.cmd->parsed()) return cmd_generate(gen);
        if (tr.cmd->parsed()) return cmd_train(tr);
        if (pr.cmd->parsed()) return cmd_predict(pr);
        if (ev.cmd->parsed()) return cmd_evaluate(ev);
        if (cv.cmd->parsed()) return cmd_cv(cv);
        if (rep.cmd->parsed()) return cmd_reproduce(rep);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
