// dynamics.hpp — unitary evolution of the joint state and probe readout
//
// Two routes compute the same probe features:
//   * evolve_probe / expectation: the direct definition, conjugating the
//     full joint density operator by U(t) and tracing out the mode;
//   * TrajectoryEngine: evolves each |n> ⊗ |probe eigenvector| once per
//     coupling, so a temperature sweep reduces to dot products with the
//     Gibbs populations.
// They agree to machine precision; the tests hold them to 1e-10.

#pragma once

#include "qthermo/hamiltonian.hpp"
#include "qthermo/schema.hpp"
#include "qthermo/thermal.hpp"

namespace qthermo {

// rho_S(T) ⊗ rho_P in the joint basis.
JointState thermal_joint_state(const ThermalSystemState& system, const ProbeState& probe);

// U(t) rho U(t)† with U from the spec's eigensystem.
JointState evolve_joint(const HamiltonianSpec& spec, const JointState& initial, double t);
JointState evolve_joint(const Eigensystem& eig, const JointState& initial, double t);

// tr_S[ U(t) (rho_S ⊗ rho_P) U(t)† ]
ProbeState evolve_probe(const HamiltonianSpec& spec, const ThermalSystemState& system,
                        const ProbeState& probe, double t);

// tr(rho sigma_i); rejects states whose imaginary part exceeds 1e-8.
double expectation(const ProbeState& probe, ObservableId obs);

// Probe features from every initial Fock level, for one (model, coupling,
// probe, schema) combination. Column j of fock_features() holds feature j
// as a function of the initial Fock index, so the thermal feature vector is
// populations · fock_features. Immutable once built; safe to share.
class TrajectoryEngine {
public:
    TrajectoryEngine(const HamiltonianSpec& spec, const ProbeState& probe,
                     const FeatureSchema& schema);

    Eigen::VectorXd features(const ThermalSystemState& system) const;
    Eigen::VectorXd features(double temperature, double tail_tol = 1e-9) const;

    const Eigen::MatrixXd& fock_features() const { return fock_features_; }
    const HamiltonianSpec& spec() const { return spec_; }

private:
    HamiltonianSpec spec_;
    FeatureSchema schema_;
    Eigen::MatrixXd fock_features_;  // (cutoff+1) x N_d
};

// Feature vector for one (spec, T, probe, schema) point, computed through
// the per-Fock decomposition.
Eigen::VectorXd trajectory(const HamiltonianSpec& spec, double temperature,
                           const ProbeState& probe, const FeatureSchema& schema,
                           double tail_tol = 1e-9);

}  // namespace qthermo
