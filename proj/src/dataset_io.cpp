#include "qthermo/dataset_io.hpp"

#include "qthermo/format.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qthermo {

using nlohmann::json;

namespace {

json range_to_json(const GridRange& r) {
    return json{{"min", r.min}, {"max", r.max}, {"count", r.count}};
}

GridRange range_from_json(const json& j) {
    return GridRange{j.at("min").get<double>(), j.at("max").get<double>(),
                     j.at("count").get<int>()};
}

json schema_to_json(const FeatureSchema& schema) {
    json entries = json::array();
    for (const auto& e : schema.entries)
        entries.push_back({{"time", e.time}, {"observable", to_string(e.observable)}});
    return entries;
}

FeatureSchema schema_from_json(const json& j) {
    FeatureSchema schema;
    for (const auto& e : j)
        schema.entries.push_back(
            {e.at("time").get<double>(), observable_from_string(e.at("observable"))});
    return schema;
}

json binning_to_json(const TemperatureBinning& b) {
    return json{{"per_value", b.per_value}, {"edges", b.bin_edges}, {"centers", b.bin_centers}};
}

TemperatureBinning binning_from_json(const json& j) {
    TemperatureBinning b;
    b.per_value = j.at("per_value").get<bool>();
    b.bin_edges = j.at("edges").get<std::vector<double>>();
    b.bin_centers = j.at("centers").get<std::vector<double>>();
    return b;
}

}  // namespace

std::string manifest_path_for(const std::string& csv_path) {
    const auto slash = csv_path.find_last_of("/\\");
    const auto dot = csv_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return csv_path + ".manifest.json";
    return csv_path.substr(0, dot) + ".manifest.json";
}

void save_dataset(const std::string& csv_path, const Dataset& dataset, const GridConfig& config,
                  const DatasetRole& role) {
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("save_dataset: cannot open " + csv_path);

    const int d = dataset.n_features();
    for (int j = 0; j < d; ++j) csv << "f" << j << ",";
    csv << "temperature,gamma,label\n";
    for (std::int64_t i = 0; i < dataset.rows(); ++i) {
        for (int j = 0; j < d; ++j) csv << fmt_double(dataset.features(i, j)) << ",";
        csv << fmt_double(dataset.temperatures(i)) << "," << fmt_double(dataset.gammas(i)) << ","
            << dataset.labels(i) << "\n";
    }
    csv.close();
    if (!csv) throw std::runtime_error("save_dataset: write failed for " + csv_path);

    json manifest{
        {"format_version", "1"},
        {"kind", "dataset"},
        {"role", role.role},
        {"noise_applied", role.noise_applied},
        {"model", to_string(config.model)},
        {"omega", config.omega},
        {"qubit_gap", config.qubit_gap},
        {"cutoff", config.cutoff},
        {"temperature", range_to_json(config.T_range)},
        {"gamma", range_to_json(config.gamma_range)},
        {"schema", schema_to_json(dataset.schema)},
        {"binning", binning_to_json(dataset.binning)},
        {"noise", {{"rel_std", dataset.noise_rel_std}, {"target", to_string(dataset.noise_target)}}},
        {"split_fraction", config.split_fraction},
        {"n_bins", config.n_bins},
        {"seed", config.seed},
        {"rows", dataset.rows()},
    };
    std::ofstream mf(manifest_path_for(csv_path));
    if (!mf) throw std::runtime_error("save_dataset: cannot open manifest for " + csv_path);
    mf << manifest.dump(2) << "\n";
}

namespace {

std::vector<double> parse_csv_line(const std::string& line) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= line.size()) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) comma = line.size();
        const std::string field = line.substr(pos, comma - pos);
        if (field.empty()) throw std::runtime_error("empty CSV field");
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used != field.size()) throw std::runtime_error("bad CSV number '" + field + "'");
        out.push_back(v);
        pos = comma + 1;
        if (comma == line.size()) break;
    }
    return out;
}

}  // namespace

Dataset load_dataset(const std::string& csv_path) {
    std::ifstream mf(manifest_path_for(csv_path));
    if (!mf)
        throw std::runtime_error("load_dataset: missing manifest " + manifest_path_for(csv_path));
    json manifest;
    try {
        manifest = json::parse(mf);
    } catch (const json::exception& e) {
        throw std::runtime_error("load_dataset: bad manifest: " + std::string(e.what()));
    }
    if (manifest.value("format_version", "") != "1")
        throw std::runtime_error("load_dataset: unsupported manifest format_version");

    Dataset dataset;
    dataset.schema = schema_from_json(manifest.at("schema"));
    dataset.binning = binning_from_json(manifest.at("binning"));
    dataset.noise_rel_std = manifest.at("noise").at("rel_std").get<double>();
    dataset.noise_target = noise_target_from_string(manifest.at("noise").at("target"));
    dataset.seed = manifest.at("seed").get<std::uint64_t>();

    std::ifstream csv(csv_path);
    if (!csv) throw std::runtime_error("load_dataset: cannot open " + csv_path);
    std::string line;
    if (!std::getline(csv, line)) throw std::runtime_error("load_dataset: empty file " + csv_path);

    const int d = dataset.schema.size();
    std::string expected_header;
    for (int j = 0; j < d; ++j) expected_header += "f" + std::to_string(j) + ",";
    expected_header += "temperature,gamma,label";
    if (line != expected_header)
        throw std::runtime_error("load_dataset: header does not match manifest schema");

    std::vector<std::vector<double>> rows;
    std::int64_t line_no = 1;
    while (std::getline(csv, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> fields;
        try {
            fields = parse_csv_line(line);
        } catch (const std::exception& e) {
            throw std::runtime_error("load_dataset: line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
        if (static_cast<int>(fields.size()) != d + 3)
            throw std::runtime_error("load_dataset: line " + std::to_string(line_no) +
                                     ": expected " + std::to_string(d + 3) + " fields");
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw std::runtime_error("load_dataset: no data rows in " + csv_path);

    const auto n = static_cast<std::int64_t>(rows.size());
    dataset.features.resize(n, d);
    dataset.temperatures.resize(n);
    dataset.gammas.resize(n);
    dataset.labels.resize(n);
    dataset.row_ids.resize(rows.size());
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& f = rows[static_cast<std::size_t>(i)];
        for (int j = 0; j < d; ++j) dataset.features(i, j) = f[static_cast<std::size_t>(j)];
        dataset.temperatures(i) = f[static_cast<std::size_t>(d)];
        dataset.gammas(i) = f[static_cast<std::size_t>(d) + 1];
        const double label = f[static_cast<std::size_t>(d) + 2];
        dataset.labels(i) = static_cast<int>(label);
        if (static_cast<double>(dataset.labels(i)) != label)
            throw std::runtime_error("load_dataset: non-integer label at line " +
                                     std::to_string(i + 2));
        dataset.row_ids[static_cast<std::size_t>(i)] = i;
    }
    return dataset;
}

FeatureMatrix load_feature_rows(const std::string& csv_path) {
    std::ifstream csv(csv_path);
    if (!csv) throw std::runtime_error("load_feature_rows: cannot open " + csv_path);
    std::string line;
    if (!std::getline(csv, line))
        throw std::runtime_error("load_feature_rows: empty file " + csv_path);

    // header is optional; a leading f0 column marks the dataset layout
    int n_feature_cols = -1;
    bool trailing_meta = false;
    std::vector<std::vector<double>> rows;
    if (line.rfind("f0,", 0) == 0) {
        std::stringstream ss(line);
        std::string field;
        int d = 0;
        while (std::getline(ss, field, ',')) {
            if (field == "f" + std::to_string(d)) ++d;
        }
        n_feature_cols = d;
        trailing_meta = line.find("temperature") != std::string::npos;
    } else {
        rows.push_back(parse_csv_line(line));
        n_feature_cols = static_cast<int>(rows.back().size());
    }
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        rows.push_back(parse_csv_line(line));
    }
    if (rows.empty()) throw std::runtime_error("load_feature_rows: no rows in " + csv_path);

    FeatureMatrix out(static_cast<std::int64_t>(rows.size()), n_feature_cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int expected = trailing_meta ? n_feature_cols + 3 : n_feature_cols;
        if (static_cast<int>(rows[i].size()) != expected)
            throw std::runtime_error("load_feature_rows: row " + std::to_string(i + 1) +
                                     " has wrong field count");
        for (int j = 0; j < n_feature_cols; ++j)
            out(static_cast<std::int64_t>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
    return out;
}

}  // namespace qthermo
