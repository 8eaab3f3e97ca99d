#include "doctest.h"

#include "support.hpp"
#include "tlsub/error.hpp"

using namespace tlsub;

namespace {

// Least-squares scalar s with (e(x)1)(1(x)e)(e(x)1) = s (e(x)1), evaluated densely.
double dense_lambda(const CMatrix& A) {
    const Index m = A.rows();
    CVector P(m * m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) P(i * m + j) = A(i, j);
    const CVector v = P.normalized();
    const CMatrix e = v * v.adjoint();
    const CMatrix I = CMatrix::Identity(m, m);
    const CMatrix left = kron(e, I), right = kron(I, e);
    const CMatrix X = left * right * left;
    const Complex s = (left.adjoint() * X).trace() / (left.adjoint() * left).trace();
    return 1.0 / s.real();
}

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
    CMatrix x(2, 2);
    x << a, b, c, d;
    return x;
}

} // namespace

TEST_CASE("validate on small matrices") {
    SUBCASE("rotation generator") {
        const CMatrix A = mat2(0, 1, -1, 0);
        const TLReport r = validate(A);
        CHECK(r.is_tl);
        CHECK(r.lambda == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(r.lambda == doctest::Approx(dense_lambda(A)).epsilon(1e-12));
        CHECK(r.lambda_residual < 1e-12);
    }
    SUBCASE("identity") {
        const CMatrix A = CMatrix::Identity(2, 2);
        const TLReport r = validate(A);
        CHECK(r.is_tl);
        CHECK(r.unitarity_residual < 1e-15);
        CHECK(r.lambda == doctest::Approx(dense_lambda(A)).epsilon(1e-12));
    }
    SUBCASE("shear is not Temperley-Lieb") {
        const TLReport r = validate(mat2(1, 1, 0, 1));
        CHECK_FALSE(r.is_tl);
        CHECK(r.unitarity_residual > 0.1);
        CHECK_THROWS_AS(normalize(mat2(1, 1, 0, 1)), Error);
    }
    SUBCASE("singular input") {
        try {
            validate(mat2(1, 2, 2, 4));
            FAIL("expected SingularMatrix");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SingularMatrix);
        }
    }
    SUBCASE("shape errors") {
        CHECK_THROWS_AS(validate(CMatrix::Identity(1, 1)), Error);
        CHECK_THROWS_AS(validate(CMatrix::Identity(2, 3)), Error);
    }
}

TEST_CASE("normalize recovers q") {
    const TLData d = test::uq2(0.5);
    CHECK(d.q == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(d.is_antidiagonal());
    CHECK(d.trace == doctest::Approx(2.5));

    const TLData flat = normalize(mat2(0, 1, -1, 0));
    CHECK(flat.q == 1.0);

    const TLData three = normalize(antidiagonal_matrix(test::antidiagonal({1, Complex(0, 1), 1})));
    CHECK(three.q == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-14));
    CHECK(three.q + 1.0 / three.q == doctest::Approx(3.0).epsilon(1e-14));

    // scaling is removed
    const TLData scaled = normalize(3.0 * antidiagonal_matrix(test::antidiagonal({2, 1, 0.5})));
    CHECK((scaled.A * scaled.A.conjugate() * (scaled.A * scaled.A.conjugate()).adjoint() -
           CMatrix::Identity(3, 3))
              .norm() < 1e-13);
    CHECK(scaled.e.trace().real() == doctest::Approx(1.0));
    CHECK((scaled.e * scaled.e - scaled.e).norm() < 1e-14);
}

TEST_CASE("q from the trace") {
    CHECK(q_from_trace(2.0) == 1.0);
    CHECK(q_from_trace(2.0 + 1e-12) == 1.0);
    CHECK(q_from_trace(3.0) == doctest::Approx(0.3819660112501051).epsilon(1e-14));
    try {
        q_from_trace(1.5);
        FAIL("expected TraceTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TraceTooSmall);
    }
}

TEST_CASE("quantum integers and phi") {
    CHECK(qint(0, 0.3) == 0.0);
    CHECK(qint(1, 0.3) == 1.0);
    CHECK(qint(3, 0.5) == doctest::Approx(5.25).epsilon(1e-15));
    CHECK(qint(4, 1.0) == 4.0);
    CHECK(qint(2, 0.5) == doctest::Approx(2.5));
    CHECK(phi(0, 0.7) == 0.0);
    CHECK(phi(1, 0.5) == doctest::Approx(0.4).epsilon(1e-15));
    const double q = 0.5;
    CHECK(phi(3, q) - q == doctest::Approx(-std::pow(q, 4) / qint(4, q)).epsilon(1e-14));
    // closed form (q^n - q^-n)/(q - q^-1)
    for (int n = 0; n < 12; ++n)
        CHECK(qint(n, 0.8) ==
              doctest::Approx((std::pow(0.8, n) - std::pow(0.8, -n)) / (0.8 - 1.0 / 0.8))
                  .epsilon(1e-12));
    // phi(n) increases to q
    double prev = -1.0;
    for (int n = 0; n < 30; ++n) {
        CHECK(phi(n, 0.6) > prev);
        CHECK(phi(n, 0.6) < 0.6);
        prev = phi(n, 0.6);
    }
}

TEST_CASE("canonicalize") {
    std::mt19937 rng(2024);
    SUBCASE("antidiagonal input is fixed") {
        const CVector a = test::antidiagonal({2, 1, 0.5});
        const Canonical c = canonicalize(antidiagonal_matrix(a));
        CHECK((c.w - CMatrix::Identity(3, 3)).norm() == 0.0);
        CHECK(c.residual < 1e-15);
    }
    for (int m : {2, 3, 4, 5}) {
        CAPTURE(m);
        for (int trial = 0; trial < 5; ++trial) {
            const CVector a = test::random_antidiagonal(m, rng);
            const CMatrix u = test::random_unitary(m, rng);
            const CMatrix A = u * antidiagonal_matrix(a) * u.transpose();
            const Canonical c = canonicalize(A);
            const TLData d = normalize(A);
            const CMatrix back = c.w * d.A * c.w.transpose();
            CHECK((back - antidiagonal_matrix(c.a)).norm() < 1e-9);
            CHECK((c.w * c.w.adjoint() - CMatrix::Identity(m, m)).norm() < 1e-12);
            for (int i = 0; i < m; ++i) CHECK(std::abs(c.a(i) * c.a(m - 1 - i)) == doctest::Approx(1.0));
        }
    }
    SUBCASE("rotated rotation generator") {
        const double t = 0.37;
        const CMatrix r = mat2(std::cos(t), -std::sin(t), std::sin(t), std::cos(t));
        const Canonical c = canonicalize(r * mat2(0, 1, -1, 0) * r.transpose());
        CHECK(std::abs(c.a(0) * c.a(1)) == doctest::Approx(1.0));
        CHECK(c.residual < 1e-9);
    }
}

TEST_CASE("invariants over random instances") {
    std::mt19937 rng(99);
    for (int m : {2, 3, 4}) {
        for (int trial = 0; trial < 4; ++trial) {
            const CVector a = test::random_antidiagonal(m, rng);
            const TLData d = normalize(antidiagonal_matrix(a));
            CAPTURE(m);
            // fitted lambda against (q + 1/q)^2
            CHECK(d.report.lambda == doctest::Approx(d.lambda()).epsilon(1e-9));
            CHECK(d.report.lambda == doctest::Approx(dense_lambda(d.A)).epsilon(1e-9));
            // q is unchanged by A -> w A w^T
            const CMatrix u = test::random_unitary(m, rng);
            const TLData moved = normalize(u * d.A * u.transpose());
            CHECK(moved.q == doctest::Approx(d.q).epsilon(1e-12));
            CHECK_FALSE(moved.is_antidiagonal());
            // (u (x) u) P = P for the gauge unitary
            const CMatrix g = -(d.A * d.A.conjugate());
            CHECK((kron(g, g) * d.P - d.P).norm() < 1e-13);
        }
    }
}
