#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "tlsub/commands.hpp"
#include "tlsub/fock.hpp"
#include "tlsub/linalg.hpp"
#include "tlsub/param.hpp"

namespace tlsub::test {

inline const std::vector<std::string> kPresets = {"m2-q1", "uq2-0.5", "m3-phase", "m3-scaled",
                                                  "m4-alt"};

inline TLData preset(const std::string& name) { return normalize(preset_matrix(name)); }

inline std::shared_ptr<const FockTruncation> fock_of(const TLData& d, int N) {
    return std::make_shared<const FockTruncation>(build(d, N));
}

inline std::shared_ptr<const FockTruncation> fock_of(const std::string& name, int N) {
    return fock_of(preset(name), N);
}

inline CVector antidiagonal(std::initializer_list<Complex> a) {
    CVector v(static_cast<Index>(a.size()));
    Index k = 0;
    for (Complex x : a) v(k++) = x;
    return v;
}

// a = (q^{-1/2}, -q^{1/2})
inline TLData uq2(double q) {
    return normalize(antidiagonal_matrix(antidiagonal({1.0 / std::sqrt(q), -std::sqrt(q)})));
}

inline CMatrix random_unitary(Index m, std::mt19937& rng) {
    std::normal_distribution<double> g;
    CMatrix z(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) z(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<CMatrix> qr(z);
    return qr.householderQ() * CMatrix::Identity(m, m);
}

// Antidiagonal coefficients with |a_i a_{m-i+1}| = 1 and random phases.
inline CVector random_antidiagonal(int m, std::mt19937& rng) {
    std::uniform_real_distribution<double> r(0.5, 2.0), t(0.0, 2.0 * std::numbers::pi);
    CVector a(m);
    for (int i = 0; i < m / 2; ++i) {
        const double s = r(rng);
        a(i) = std::polar(s, t(rng));
        a(m - 1 - i) = std::polar(1.0 / s, t(rng));
    }
    if (m % 2) a(m / 2) = std::polar(1.0, t(rng));
    return a;
}

inline double rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

} // namespace tlsub::test
