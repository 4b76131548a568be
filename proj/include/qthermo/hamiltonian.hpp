// hamiltonian.hpp — truncated-Fock-space Hamiltonians and their eigensystems

#pragma once

#include "qthermo/types.hpp"

namespace qthermo {

// H = omega a†a + (Omega/2) sigma_z + interaction, on dimension 2*(cutoff+1).
// Jaynes-Cummings interaction: gamma (a† sigma_- + a sigma_+).
// Rabi interaction:            gamma (a + a†) sigma_x.
Matrix build_hamiltonian(const HamiltonianSpec& spec);

// Eigendecomposition H = V diag(eigenvalues) V†, used for exact evolution
// at arbitrary times.
struct Eigensystem {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;

    // U(t) = V exp(-i diag t) V†
    Matrix propagator(double t) const;

    // exp(-i eigenvalues t), the diagonal of the propagator in the eigenbasis
    Vector phases(double t) const;
};

// Throws if H is not Hermitian (within tol) or the solver fails.
Eigensystem diagonalize(const Matrix& H, double hermiticity_tol = 1e-12);

}  // namespace qthermo
