// binning.hpp — temperature discretization into class labels

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace qthermo {

// Maps temperatures to class labels and back to representative values.
// Two modes:
//   * per-value (n_bins = 0): one class per distinct grid temperature,
//     decode(encode(T)) == T for every grid point;
//   * equal-width (n_bins >= 2): bins of equal width spanning
//     [min T, max T], decode returns the bin midpoint.
struct TemperatureBinning {
    std::vector<double> bin_edges;    // strictly increasing, size = classes + 1
    std::vector<double> bin_centers;  // size = classes
    bool per_value{false};

    int num_classes() const { return static_cast<int>(bin_centers.size()); }

    // Rejects temperatures outside [front edge, back edge].
    int encode(double temperature) const;
    double decode(int label) const;
};

TemperatureBinning bin_temperatures(const std::vector<double>& temperatures, int n_bins);

}  // namespace qthermo
