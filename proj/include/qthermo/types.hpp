// types.hpp — core domain types for the probe-thermometry simulator
//
// Conventions fixed here and relied on everywhere else:
//   * product basis |n> ⊗ |s> with the Fock index n major and the qubit
//     index s ∈ {g, e} minor, i.e. joint index = 2n + s with g=0, e=1;
//   * sigma_z |e> = +|e>, so in the (g, e) ordering
//     sigma_z = diag(-1, +1);
//   * all energies in units of the mode frequency (omega = 1 default),
//     temperatures in the same units with k_B = 1.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qthermo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class ModelKind { JaynesCummings, Rabi };

enum class ObservableId { SigmaX, SigmaY, SigmaZ };

std::string to_string(ModelKind m);
std::string to_string(ObservableId o);
ModelKind model_from_string(const std::string& s);
ObservableId observable_from_string(const std::string& s);

// Qubit-probe + bosonic-mode Hamiltonian parameters. The retained Fock
// levels are 0..cutoff, so operators act on dimension 2*(cutoff+1).
struct HamiltonianSpec {
    ModelKind model{ModelKind::JaynesCummings};
    double omega{1.0};   // mode frequency
    double Omega{1.0};   // qubit gap
    double gamma{1.0};   // coupling strength
    int cutoff{60};      // highest retained Fock number

    int joint_dim() const { return 2 * (cutoff + 1); }
    int fock_dim() const { return cutoff + 1; }

    void validate() const {
        if (omega <= 0.0) throw std::invalid_argument("HamiltonianSpec: omega must be > 0");
        if (gamma < 0.0) throw std::invalid_argument("HamiltonianSpec: gamma must be >= 0");
        if (cutoff < 1) throw std::invalid_argument("HamiltonianSpec: cutoff must be >= 1");
    }
};

// Truncated Gibbs state of the bare mode, renormalized over the kept levels.
struct ThermalSystemState {
    double temperature{0.0};
    Eigen::VectorXd populations;  // length cutoff+1, sums to 1
    double tail_mass{0.0};        // untruncated probability beyond the cutoff
};

// 2x2 probe density operator.
struct ProbeState {
    Matrix rho{Matrix::Zero(2, 2)};

    // trace 1, Hermitian, eigenvalues >= -tol
    void validate(double tol = 1e-12) const;
};

// Joint system ⊗ probe density operator.
struct JointState {
    Matrix rho;
    int system_dim{0};
    int probe_dim{2};

    void validate(double tol = 1e-10) const;
};

}  // namespace qthermo
