#include "qthermo/binning.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qthermo {

int TemperatureBinning::encode(double temperature) const {
    if (bin_centers.empty()) throw std::logic_error("TemperatureBinning: empty binning");
    if (temperature < bin_edges.front() || temperature > bin_edges.back())
        throw std::out_of_range("TemperatureBinning: temperature " + std::to_string(temperature) +
                                " outside training range [" + std::to_string(bin_edges.front()) +
                                ", " + std::to_string(bin_edges.back()) + "]");
    // bins are right-open except the last; edges are strictly increasing
    const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), temperature);
    int idx = static_cast<int>(it - bin_edges.begin()) - 1;
    if (idx >= num_classes()) idx = num_classes() - 1;
    if (idx < 0) idx = 0;
    return idx;
}

double TemperatureBinning::decode(int label) const {
    if (label < 0 || label >= num_classes())
        throw std::out_of_range("TemperatureBinning: label " + std::to_string(label) +
                                " out of range");
    return bin_centers[static_cast<std::size_t>(label)];
}

TemperatureBinning bin_temperatures(const std::vector<double>& temperatures, int n_bins) {
    if (temperatures.empty())
        throw std::invalid_argument("bin_temperatures: no temperatures given");
    if (n_bins < 0 || n_bins == 1)
        throw std::invalid_argument("bin_temperatures: n_bins must be 0 (per value) or >= 2");

    std::vector<double> sorted = temperatures;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    TemperatureBinning binning;
    if (n_bins == 0) {
        binning.per_value = true;
        binning.bin_centers = sorted;
        const std::size_t m = sorted.size();
        binning.bin_edges.resize(m + 1);
        if (m == 1) {
            // degenerate single-class window
            const double half = std::max(1.0, std::abs(sorted[0])) * 1e-9;
            binning.bin_edges = {sorted[0] - half, sorted[0] + half};
        } else {
            binning.bin_edges[0] = sorted.front();
            for (std::size_t i = 1; i < m; ++i)
                binning.bin_edges[i] = 0.5 * (sorted[i - 1] + sorted[i]);
            binning.bin_edges[m] = sorted.back();
        }
    } else {
        const double lo = sorted.front();
        const double hi = sorted.back();
        if (!(hi > lo))
            throw std::invalid_argument(
                "bin_temperatures: need a positive-width range for equal-width bins");
        binning.bin_edges.resize(n_bins + 1);
        binning.bin_centers.resize(n_bins);
        const double width = (hi - lo) / n_bins;
        for (int i = 0; i <= n_bins; ++i) binning.bin_edges[i] = lo + width * i;
        binning.bin_edges[n_bins] = hi;
        for (int i = 0; i < n_bins; ++i)
            binning.bin_centers[i] = 0.5 * (binning.bin_edges[i] + binning.bin_edges[i + 1]);
    }
    return binning;
}

}  // namespace qthermo
