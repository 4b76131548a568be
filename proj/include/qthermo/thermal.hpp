// thermal.hpp — truncated Gibbs populations of the bare mode

#pragma once

#include "qthermo/types.hpp"

namespace qthermo {

// p_n ∝ exp(-n*omega/T) over n = 0..cutoff, renormalized over the kept
// levels. tail_mass is the untruncated weight beyond the cutoff,
// exp(-omega*(cutoff+1)/T); the call rejects cutoffs whose tail exceeds
// tail_tol (insufficient truncation for this temperature).
ThermalSystemState gibbs_populations(double omega, double temperature, int cutoff,
                                     double tail_tol = 1e-9);

// Sum_n n * p_n of the truncated, renormalized distribution.
double mean_occupation(const ThermalSystemState& state);

}  // namespace qthermo
