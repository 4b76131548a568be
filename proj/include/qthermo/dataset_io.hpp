// dataset_io.hpp — CSV datasets with JSON sidecar manifests
//
// CSV layout: header f0,...,f{N_d-1},temperature,gamma,label; features and
// temperatures printed with 17 significant digits so reloading is bit-exact.
// The manifest lives next to the CSV (extension replaced by .manifest.json)
// and records the generating configuration, schema, binning and seed.

#pragma once

#include "qthermo/dataset.hpp"

#include <string>

namespace qthermo {

std::string manifest_path_for(const std::string& csv_path);

struct DatasetRole {
    std::string role{"full"};  // full | train | validation
    bool noise_applied{false};
};

void save_dataset(const std::string& csv_path, const Dataset& dataset, const GridConfig& config,
                  const DatasetRole& role = {});

// Reads CSV + manifest. Loaded rows are renumbered 0..n-1.
Dataset load_dataset(const std::string& csv_path);

// Feature rows from a CSV that has at least the f0..f{d-1} columns (a full
// dataset file or a headerless plain matrix is accepted).
FeatureMatrix load_feature_rows(const std::string& csv_path);

}  // namespace qthermo
