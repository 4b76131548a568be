#include "qthermo/hamiltonian.hpp"

#include "qthermo/operators.hpp"

namespace qthermo {

std::string to_string(ModelKind m) {
    return m == ModelKind::JaynesCummings ? "jc" : "rabi";
}

std::string to_string(ObservableId o) {
    switch (o) {
        case ObservableId::SigmaX: return "sx";
        case ObservableId::SigmaY: return "sy";
        case ObservableId::SigmaZ: return "sz";
    }
    return "?";
}

ModelKind model_from_string(const std::string& s) {
    if (s == "jc" || s == "jaynes_cummings") return ModelKind::JaynesCummings;
    if (s == "rabi") return ModelKind::Rabi;
    throw std::invalid_argument("unknown model '" + s + "' (expected jc or rabi)");
}

ObservableId observable_from_string(const std::string& s) {
    if (s == "sx") return ObservableId::SigmaX;
    if (s == "sy") return ObservableId::SigmaY;
    if (s == "sz") return ObservableId::SigmaZ;
    throw std::invalid_argument("unknown observable '" + s + "' (expected sx, sy or sz)");
}

Matrix build_hamiltonian(const HamiltonianSpec& spec) {
    spec.validate();
    const int levels = spec.fock_dim();
    const Matrix a = annihilation(levels);
    const Matrix id_fock = Matrix::Identity(levels, levels);
    const Matrix id_probe = Matrix::Identity(2, 2);

    Matrix h = spec.omega * kron(number_operator(levels), id_probe) +
               0.5 * spec.Omega * kron(id_fock, sigma_z());
    if (spec.model == ModelKind::JaynesCummings) {
        h += spec.gamma * (kron(a.adjoint(), sigma_minus()) + kron(a, sigma_plus()));
    } else {
        h += spec.gamma * kron(a + Matrix(a.adjoint()), sigma_x());
    }
    return h;
}

Matrix Eigensystem::propagator(double t) const {
    return eigenvectors * phases(t).asDiagonal() * eigenvectors.adjoint();
}

Vector Eigensystem::phases(double t) const {
    Vector ph(eigenvalues.size());
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
        ph(i) = std::exp(Complex(0.0, -eigenvalues(i) * t));
    return ph;
}

Eigensystem diagonalize(const Matrix& H, double hermiticity_tol) {
    if (H.rows() != H.cols()) throw std::invalid_argument("diagonalize: matrix must be square");
    const double dev = (H - Matrix(H.adjoint())).cwiseAbs().maxCoeff();
    if (dev > hermiticity_tol)
        throw std::invalid_argument("diagonalize: matrix is not Hermitian (deviation " +
                                    std::to_string(dev) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("diagonalize: eigensolver failed to converge");
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

}  // namespace qthermo
