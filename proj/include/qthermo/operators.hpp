// operators.hpp — Pauli matrices, truncated ladder operators, products and
// partial traces in the |n> ⊗ |s> basis (n major, s = g,e minor).

#pragma once

#include "qthermo/types.hpp"

namespace qthermo {

// Probe operators in the (g, e) ordering; sigma_z |e> = +|e>.
inline Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix sigma_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
    return m;
}

inline Matrix sigma_z() {
    Matrix m(2, 2);
    m << -1, 0, 0, 1;
    return m;
}

inline Matrix sigma_plus() {   // |e><g|
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}

inline Matrix sigma_minus() {  // |g><e|
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

inline Matrix pauli(ObservableId o) {
    switch (o) {
        case ObservableId::SigmaX: return sigma_x();
        case ObservableId::SigmaY: return sigma_y();
        case ObservableId::SigmaZ: return sigma_z();
    }
    throw std::invalid_argument("pauli: unknown observable");
}

// Truncated annihilation operator, a|n> = sqrt(n)|n-1>, dimension levels x levels.
inline Matrix annihilation(int levels) {
    Matrix a = Matrix::Zero(levels, levels);
    for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Matrix number_operator(int levels) {
    Matrix n = Matrix::Zero(levels, levels);
    for (int k = 0; k < levels; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Trace out the mode, leaving the 2x2 probe operator.
inline Matrix partial_trace_system(const Matrix& joint) {
    if (joint.rows() != joint.cols() || joint.rows() % 2 != 0)
        throw std::invalid_argument("partial_trace_system: bad joint dimension");
    const Eigen::Index levels = joint.rows() / 2;
    Matrix probe = Matrix::Zero(2, 2);
    for (Eigen::Index n = 0; n < levels; ++n)
        for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp) probe(s, sp) += joint(2 * n + s, 2 * n + sp);
    return probe;
}

// Trace out the probe, leaving the mode operator.
inline Matrix partial_trace_probe(const Matrix& joint) {
    if (joint.rows() != joint.cols() || joint.rows() % 2 != 0)
        throw std::invalid_argument("partial_trace_probe: bad joint dimension");
    const Eigen::Index levels = joint.rows() / 2;
    Matrix mode = Matrix::Zero(levels, levels);
    for (Eigen::Index n = 0; n < levels; ++n)
        for (Eigen::Index m = 0; m < levels; ++m)
            for (int s = 0; s < 2; ++s) mode(n, m) += joint(2 * n + s, 2 * m + s);
    return mode;
}

// |+> = (|g> + |e>)/sqrt(2), the default probe preparation.
inline ProbeState plus_state() {
    ProbeState p;
    p.rho = Matrix::Constant(2, 2, Complex(0.5, 0.0));
    return p;
}

inline ProbeState ground_state() {
    ProbeState p;
    p.rho = Matrix::Zero(2, 2);
    p.rho(0, 0) = 1.0;
    return p;
}

inline ProbeState maximally_mixed_state() {
    ProbeState p;
    p.rho = 0.5 * Matrix::Identity(2, 2);
    return p;
}

}  // namespace qthermo
