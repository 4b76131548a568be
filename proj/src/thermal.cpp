#include "qthermo/thermal.hpp"

#include <cmath>

namespace qthermo {

ThermalSystemState gibbs_populations(double omega, double temperature, int cutoff,
                                     double tail_tol) {
    if (omega <= 0.0) throw std::invalid_argument("gibbs_populations: omega must be > 0");
    if (temperature <= 0.0)
        throw std::invalid_argument("gibbs_populations: temperature must be > 0");
    if (cutoff < 1) throw std::invalid_argument("gibbs_populations: cutoff must be >= 1");

    ThermalSystemState state;
    state.temperature = temperature;
    state.tail_mass = std::exp(-omega * (cutoff + 1) / temperature);
    if (state.tail_mass > tail_tol)
        throw std::runtime_error(
            "gibbs_populations: truncation tail " + std::to_string(state.tail_mass) +
            " exceeds tolerance (raise the Fock cutoff)");

    state.populations.resize(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n)
        state.populations(n) = std::exp(-static_cast<double>(n) * omega / temperature);
    state.populations /= state.populations.sum();
    return state;
}

double mean_occupation(const ThermalSystemState& state) {
    double mean = 0.0;
    for (Eigen::Index n = 0; n < state.populations.size(); ++n)
        mean += static_cast<double>(n) * state.populations(n);
    return mean;
}

}  // namespace qthermo
