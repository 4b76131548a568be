#include "qthermo/dynamics.hpp"

#include "qthermo/operators.hpp"

#include <cmath>
#include <map>

namespace qthermo {

void ProbeState::validate(double tol) const {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("ProbeState: rho must be 2x2");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol)
        throw std::invalid_argument("ProbeState: trace differs from 1");
    if ((rho - Matrix(rho.adjoint())).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("ProbeState: not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
    if (solver.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("ProbeState: negative eigenvalue");
}

void JointState::validate(double tol) const {
    if (rho.rows() != rho.cols() || rho.rows() != system_dim * probe_dim)
        throw std::invalid_argument("JointState: dimension mismatch");
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol)
        throw std::invalid_argument("JointState: trace differs from 1");
    if ((rho - Matrix(rho.adjoint())).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("JointState: not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
    if (solver.eigenvalues().minCoeff() < -tol)
        throw std::invalid_argument("JointState: negative eigenvalue");
}

JointState thermal_joint_state(const ThermalSystemState& system, const ProbeState& probe) {
    const int levels = static_cast<int>(system.populations.size());
    JointState joint;
    joint.system_dim = levels;
    joint.rho = Matrix::Zero(2 * levels, 2 * levels);
    for (int n = 0; n < levels; ++n)
        joint.rho.block(2 * n, 2 * n, 2, 2) = system.populations(n) * probe.rho;
    return joint;
}

JointState evolve_joint(const Eigensystem& eig, const JointState& initial, double t) {
    const Matrix u = eig.propagator(t);
    JointState evolved = initial;
    evolved.rho = u * initial.rho * u.adjoint();
    return evolved;
}

JointState evolve_joint(const HamiltonianSpec& spec, const JointState& initial, double t) {
    if (initial.rho.rows() != spec.joint_dim())
        throw std::invalid_argument("evolve_joint: state does not match spec dimension");
    return evolve_joint(diagonalize(build_hamiltonian(spec)), initial, t);
}

ProbeState evolve_probe(const HamiltonianSpec& spec, const ThermalSystemState& system,
                        const ProbeState& probe, double t) {
    if (t < 0.0) throw std::invalid_argument("evolve_probe: t must be >= 0");
    if (static_cast<int>(system.populations.size()) != spec.fock_dim())
        throw std::invalid_argument("evolve_probe: system does not match spec cutoff");
    const JointState joint = thermal_joint_state(system, probe);
    const JointState evolved = evolve_joint(spec, joint, t);
    ProbeState out;
    out.rho = partial_trace_system(evolved.rho);
    // clean the numerical skew so downstream invariants hold exactly
    out.rho = 0.5 * (out.rho + Matrix(out.rho.adjoint()));
    return out;
}

double expectation(const ProbeState& probe, ObservableId obs) {
    const Complex value = (probe.rho * pauli(obs)).trace();
    if (std::abs(value.imag()) > 1e-8)
        throw std::runtime_error("expectation: imaginary part " +
                                 std::to_string(value.imag()) + " exceeds 1e-8");
    return value.real();
}

namespace {

// <sigma_{x,y,z}> of a pure joint state, traced over the mode.
struct ProbeMoments {
    double sx, sy, sz;
};

ProbeMoments probe_moments(const Vector& psi) {
    const Eigen::Index levels = psi.size() / 2;
    Complex coherence(0.0, 0.0);  // rho_P(g,e)
    double pop_g = 0.0, pop_e = 0.0;
    for (Eigen::Index n = 0; n < levels; ++n) {
        const Complex ag = psi(2 * n);
        const Complex ae = psi(2 * n + 1);
        pop_g += std::norm(ag);
        pop_e += std::norm(ae);
        coherence += ag * std::conj(ae);
    }
    return {2.0 * coherence.real(), 2.0 * coherence.imag(), pop_e - pop_g};
}

double pick_moment(const ProbeMoments& m, ObservableId obs) {
    switch (obs) {
        case ObservableId::SigmaX: return m.sx;
        case ObservableId::SigmaY: return m.sy;
        case ObservableId::SigmaZ: return m.sz;
    }
    return 0.0;
}

}  // namespace

TrajectoryEngine::TrajectoryEngine(const HamiltonianSpec& spec, const ProbeState& probe,
                                   const FeatureSchema& schema)
    : spec_(spec), schema_(schema) {
    spec_.validate();
    schema_.validate();
    probe.validate();

    const Eigensystem eig = diagonalize(build_hamiltonian(spec_));
    const int levels = spec_.fock_dim();
    const int n_features = schema_.size();
    fock_features_.setZero(levels, n_features);

    // Probe eigenvectors with non-negligible weight; a pure probe gives one.
    Eigen::SelfAdjointEigenSolver<Matrix> probe_eig(probe.rho);
    const Matrix rows_conj = eig.eigenvectors.adjoint();  // V†

    for (int branch = 0; branch < 2; ++branch) {
        const double weight = probe_eig.eigenvalues()(branch);
        if (weight < 1e-15) continue;
        const Vector phi = probe_eig.eigenvectors().col(branch);

        for (int n = 0; n < levels; ++n) {
            // V† (|n> ⊗ phi): two columns of V† pick out the |n,g>, |n,e> amplitudes
            const Vector coeff = phi(0) * rows_conj.col(2 * n) + phi(1) * rows_conj.col(2 * n + 1);

            std::map<double, ProbeMoments> at_time;
            for (int j = 0; j < n_features; ++j) {
                const auto& entry = schema_.entries[j];
                auto it = at_time.find(entry.time);
                if (it == at_time.end()) {
                    const Vector psi =
                        eig.eigenvectors * Vector(eig.phases(entry.time).cwiseProduct(coeff));
                    it = at_time.emplace(entry.time, probe_moments(psi)).first;
                }
                fock_features_(n, j) += weight * pick_moment(it->second, entry.observable);
            }
        }
    }
}

Eigen::VectorXd TrajectoryEngine::features(const ThermalSystemState& system) const {
    if (system.populations.size() != fock_features_.rows())
        throw std::invalid_argument("TrajectoryEngine: system does not match cutoff");
    return fock_features_.transpose() * system.populations;
}

Eigen::VectorXd TrajectoryEngine::features(double temperature, double tail_tol) const {
    return features(gibbs_populations(spec_.omega, temperature, spec_.cutoff, tail_tol));
}

Eigen::VectorXd trajectory(const HamiltonianSpec& spec, double temperature,
                           const ProbeState& probe, const FeatureSchema& schema,
                           double tail_tol) {
    return TrajectoryEngine(spec, probe, schema).features(temperature, tail_tol);
}

}  // namespace qthermo
