#include "qthermo/operators.hpp"

#include <doctest.h>

using namespace qthermo;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("pauli algebra") {
    const Matrix id = Matrix::Identity(2, 2);
    CHECK(max_abs(sigma_x() * sigma_x() - id) == 0.0);
    CHECK(max_abs(sigma_y() * sigma_y() - id) == 0.0);
    CHECK(max_abs(sigma_z() * sigma_z() - id) == 0.0);

    // [sigma_x, sigma_y] = 2i sigma_z in this basis ordering
    const Matrix comm = sigma_x() * sigma_y() - sigma_y() * sigma_x();
    CHECK(max_abs(comm - Complex(0, 2) * sigma_z()) < 1e-15);

    // sigma_z |e> = +|e> with e the second basis vector
    CHECK(sigma_z()(1, 1) == Complex(1, 0));
    CHECK(sigma_z()(0, 0) == Complex(-1, 0));

    // ladder operators move between g and e
    CHECK(max_abs(sigma_plus() - 0.5 * (sigma_x() + Complex(0, 1) * sigma_y())) < 1e-15);
    CHECK(max_abs(Matrix(sigma_plus().adjoint()) - sigma_minus()) == 0.0);
}

TEST_CASE("annihilation operator and number operator") {
    const int levels = 6;
    const Matrix a = annihilation(levels);
    const Matrix n_op = number_operator(levels);

    // a |n> = sqrt(n) |n-1>
    CHECK(a(0, 1).real() == doctest::Approx(1.0));
    CHECK(a(3, 4).real() == doctest::Approx(2.0));

    // a† a = n exactly on the truncated space
    CHECK(max_abs(Matrix(a.adjoint() * a) - n_op) < 1e-14);

    // [a, a†] = 1 everywhere except the corner the truncation cuts off
    const Matrix comm = a * Matrix(a.adjoint()) - Matrix(a.adjoint()) * a;
    Matrix expected = Matrix::Identity(levels, levels);
    expected(levels - 1, levels - 1) = -static_cast<double>(levels - 1);
    CHECK(max_abs(comm - expected) < 1e-14);
}

TEST_CASE("kron lays out the joint basis n-major") {
    // basis |n> ⊗ |s>: operator on the mode goes on the left
    const Matrix a = annihilation(3);
    const Matrix joint = kron(a, Matrix::Identity(2, 2));
    REQUIRE(joint.rows() == 6);
    // <0,g| a⊗I |1,g> = sqrt(1): row 2*0+0, column 2*1+0
    CHECK(joint(0, 2).real() == doctest::Approx(1.0));
    CHECK(joint(1, 3).real() == doctest::Approx(1.0));
    CHECK(max_abs(joint.block(0, 0, 2, 2)) == 0.0);
}

TEST_CASE("partial traces invert the tensor product") {
    Matrix mode(3, 3);
    mode << 0.5, 0.1, 0.0,
            0.1, 0.3, 0.05,
            0.0, 0.05, 0.2;
    const Matrix probe = 0.5 * (Matrix::Identity(2, 2) + 0.4 * sigma_x() + 0.2 * sigma_z());
    const Matrix joint = kron(mode, probe);

    CHECK(max_abs(partial_trace_probe(joint) - mode) < 1e-14);
    CHECK(max_abs(partial_trace_system(joint) - probe) < 1e-14);

    // tr_S is trace-preserving
    CHECK(std::abs(partial_trace_system(joint).trace() - joint.trace()) < 1e-14);

    CHECK_THROWS_AS((void)partial_trace_system(Matrix::Zero(3, 3)), std::invalid_argument);
}

TEST_CASE("probe preparations are valid states") {
    CHECK_NOTHROW(plus_state().validate());
    CHECK_NOTHROW(ground_state().validate());
    CHECK_NOTHROW(maximally_mixed_state().validate());

    // |+> points along +x
    const Matrix rho = plus_state().rho;
    CHECK((rho * sigma_x()).trace().real() == doctest::Approx(1.0));
    CHECK((rho * sigma_z()).trace().real() == doctest::Approx(0.0));

    ProbeState bad;
    bad.rho = Matrix::Zero(2, 2);  // trace 0
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

}  // TEST_SUITE
