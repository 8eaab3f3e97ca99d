#include "doctest.h"

#include "support.hpp"

using namespace tlsub;

TEST_CASE("apply_kron agrees with the explicit Kronecker product") {
    std::mt19937 rng(7);
    const CMatrix a = CMatrix::Random(3, 4), b = CMatrix::Random(2, 5), x = CMatrix::Random(20, 3);
    CHECK((apply_kron(a, b, x) - kron(a, b) * x).norm() < 1e-13);
    CHECK_THROWS(apply_kron(a, b, CMatrix::Random(19, 1)));
}

TEST_CASE("strided_rows picks one tensor slot") {
    CMatrix x(6, 1);
    x << 0, 1, 2, 3, 4, 5;
    const CMatrix r = strided_rows(x, 1, 3);
    REQUIRE(r.rows() == 2);
    CHECK(r(0, 0) == Complex(1.0));
    CHECK(r(1, 0) == Complex(4.0));
}

TEST_CASE("Lanczos norm estimates match the dense spectrum") {
    std::srand(11);
    const CMatrix x = CMatrix::Random(900, 700);
    const double exact = singular_values(x)(0);
    CHECK(spectral_norm(x) == doctest::Approx(exact).epsilon(1e-8));

    const CMatrix h = x.adjoint() * x / 700.0;
    const double top = singular_values(h)(0);
    CHECK(hermitian_norm(h) == doctest::Approx(top).epsilon(1e-8));

    // implicit operator above the materialization limit
    const CMatrix y = CMatrix::Random(1500, 1200);
    const double ey = singular_values(y)(0);
    const double est = operator_norm([&](const CMatrix& v) { return CMatrix(y * v); },
                                     [&](const CMatrix& v) { return CMatrix(y.adjoint() * v); },
                                     y.rows(), y.cols());
    CHECK(est <= ey * (1.0 + 1e-12));
    CHECK(est == doctest::Approx(ey).epsilon(1e-6));
}

TEST_CASE("isometry and coisometry defects") {
    std::mt19937 rng(3);
    const CMatrix u = test::random_unitary(6, rng);
    const CMatrix iso = u.leftCols(4);
    CHECK(isometry_defect(iso) < 1e-14);
    CHECK(coisometry_defect(iso.adjoint()) < 1e-14);
    CHECK(coisometry_defect(iso) == doctest::Approx(1.0));
}

TEST_CASE("column phase convention") {
    CMatrix b(3, 2);
    b << Complex(0.1, 0), Complex(0, 0.6), Complex(0, -0.7), Complex(0.8, 0), Complex(0.5, 0.4),
        Complex(0, 0);
    fix_column_phases(b);
    CHECK(std::abs(b(1, 0).imag()) < 1e-15);
    CHECK(b(1, 0).real() > 0.0);
    CHECK(std::abs(b(1, 1).imag()) < 1e-15);
    CHECK(b(1, 1).real() > 0.0);

    // ties go to the first entry
    CMatrix t(2, 1);
    t << Complex(0, 1), Complex(-1, 0);
    fix_column_phases(t);
    CHECK(t(0, 0) == Complex(1.0, 0.0));
}
