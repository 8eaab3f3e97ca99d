#include "tlsub/uq2coeff.hpp"

#include <cmath>
#include <numbers>

#include "tlsub/error.hpp"
#include "tlsub/fock.hpp"

namespace tlsub {

namespace {

std::vector<Index> interior(int blocks, int K, int reach) {
    std::vector<Index> idx;
    for (int b = 0; b < blocks; ++b)
        for (int j = 0; j + reach <= K; ++j) idx.push_back(static_cast<Index>(b) * (K + 1) + j);
    return idx;
}

double restricted_norm(const CMatrix& x, const std::vector<Index>& cols) {
    if (cols.empty()) return 0.0;
    return spectral_norm(x(Eigen::all, cols));
}

SURep character_rep(double q, Complex z) {
    SURep r;
    r.q = q;
    r.K = 0;
    r.alpha = CMatrix::Constant(1, 1, z);
    r.gamma = CMatrix::Zero(1, 1);
    return r;
}

} // namespace

SURep build_su_rep(double q, int K) {
    if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::InvalidQ, "need 0 < q < 1");
    if (K < 4) throw Error(ErrorCode::InvalidArgument, "need K >= 4");
    SURep r;
    r.q = q;
    r.K = K;
    r.alpha = CMatrix::Zero(K + 1, K + 1);
    r.gamma = CMatrix::Zero(K + 1, K + 1);
    for (int k = 0; k <= K; ++k) {
        r.gamma(k, k) = std::pow(q, k);
        if (k >= 1) r.alpha(k - 1, k) = std::sqrt(1.0 - std::pow(q, 2 * k));
    }
    const CMatrix& a = r.alpha;
    const CMatrix& g = r.gamma;
    CMatrix U(2 * (K + 1), 2 * (K + 1));
    U << a, -q * g.adjoint(), g, a.adjoint();
    r.residuals.emplace_back("unitarity", interior_unitarity(U, 2, K, 1));
    const auto cols = interior(1, K, 2);
    r.residuals.emplace_back("alpha_gamma", restricted_norm(a * g - q * g * a, cols));
    r.residuals.emplace_back("alpha_gamma_star",
                             restricted_norm(a * g.adjoint() - q * g.adjoint() * a, cols));
    r.residuals.emplace_back("gamma_normal",
                             restricted_norm(g * g.adjoint() - g.adjoint() * g, cols));
    return r;
}

GradedElement GradedElement::homogeneous(int degree, CMatrix m) {
    GradedElement g(m.rows());
    g.terms_.emplace(degree, std::move(m));
    return g;
}

GradedElement GradedElement::unit(Index dim) {
    return homogeneous(0, CMatrix::Identity(dim, dim));
}

void GradedElement::add(int degree, const CMatrix& m) {
    auto it = terms_.find(degree);
    if (it == terms_.end()) terms_.emplace(degree, m);
    else it->second += m;
}

std::vector<int> GradedElement::support(double eps) const {
    std::vector<int> out;
    for (const auto& [d, m] : terms_)
        if (m.norm() > eps) out.push_back(d);
    return out;
}

double GradedElement::mass_outside(int degree) const {
    double worst = 0.0;
    for (const auto& [d, m] : terms_)
        if (d != degree) worst = std::max(worst, m.norm());
    return worst;
}

GradedElement GradedElement::adjoint() const {
    GradedElement g(dim_);
    for (const auto& [d, m] : terms_) g.terms_.emplace(-d, m.adjoint());
    return g;
}

CMatrix GradedElement::project() const {
    CMatrix out = CMatrix::Zero(dim_, dim_);
    for (const auto& [d, m] : terms_) out += m;
    return out;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b) {
    GradedElement g(a.dim_);
    for (const auto& [da, ma] : a.terms_)
        for (const auto& [db, mb] : b.terms_) g.add(da + db, ma * mb);
    return g;
}

GradedElement operator+(const GradedElement& a, const GradedElement& b) {
    GradedElement g = a;
    if (g.dim_ == 0) g.dim_ = b.dim_;
    for (const auto& [d, m] : b.terms_) g.add(d, m);
    return g;
}

GradedElement operator*(Complex s, const GradedElement& a) {
    GradedElement g = a;
    for (auto& [d, m] : g.terms_) m *= s;
    return g;
}

GradedMatrix defining_v(const SURep& rep) {
    const double q = rep.q;
    return {{GradedElement::homogeneous(-1, rep.alpha),
             GradedElement::homogeneous(0, -q * rep.gamma.adjoint())},
            {GradedElement::homogeneous(-1, rep.gamma),
             GradedElement::homogeneous(0, rep.alpha.adjoint())}};
}

CMatrix project(const GradedMatrix& v) {
    const Index n = static_cast<Index>(v.size());
    if (n == 0) return CMatrix();
    const Index d = v[0][0].dim();
    CMatrix out(n * d, n * d);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) out.block(i * d, j * d, d, d) = v[i][j].project();
    return out;
}

CMatrix weight_basis(const CMatrix& jw, int n) {
    const Index size = Index(1) << n;
    if (jw.rows() != size || jw.cols() != size)
        throw Error(ErrorCode::InvalidArgument, "projection has the wrong size");
    CMatrix basis(size, n + 1);
    for (int b = 0; b <= n; ++b) {
        const int ones = b; // number of second-factor letters
        Index best = -1;
        double best_norm = -1.0;
        for (Index w = 0; w < size; ++w) {
            if (__builtin_popcountll(static_cast<unsigned long long>(w)) != ones) continue;
            const double nrm = jw.col(w).norm();
            if (nrm > best_norm * (1.0 + 1e-12)) {
                best_norm = nrm;
                best = w;
            }
        }
        if (best < 0 || best_norm < 1e-8)
            throw Error(ErrorCode::InvalidArgument, "projection has an empty weight space");
        basis.col(b) = jw.col(best) / best_norm;
    }
    fix_column_phases(basis);
    return basis;
}

CMatrix uq2_jones_wenzl(double q, int n) {
    CVector a(2);
    a << 1.0 / std::sqrt(q), -std::sqrt(q);
    const TLData d = normalize(antidiagonal_matrix(a));
    return jw_dense(d, n);
}

GradedMatrix spin_coeffs(const SURep& rep, int two_l, const CMatrix& jw) {
    if (two_l < 0) throw Error(ErrorCode::InvalidArgument, "need l >= 0");
    if (two_l > kMaxSpinWord)
        throw Error(ErrorCode::BudgetExceeded, "spin coefficients limited to 2l <= 4");
    const Index dim = rep.alpha.rows();
    const int n = two_l;
    if (n == 0) return {{GradedElement::unit(dim)}};
    const CMatrix B = weight_basis(jw, n);
    const GradedMatrix V = defining_v(rep);
    const Index words = Index(1) << n;
    const int size = n + 1;
    GradedMatrix out(size, std::vector<GradedElement>(size, GradedElement(dim)));
    for (Index I = 0; I < words; ++I)
        for (Index J = 0; J < words; ++J) {
            // letters read from the first tensor factor, most significant bit
            GradedElement prod = GradedElement::unit(dim);
            for (int k = 0; k < n; ++k) {
                const int i = static_cast<int>((I >> (n - 1 - k)) & 1);
                const int j = static_cast<int>((J >> (n - 1 - k)) & 1);
                prod = prod * V[i][j];
            }
            for (int a = 0; a < size; ++a) {
                const Complex left = std::conj(B(I, a));
                if (left == Complex(0.0)) continue;
                for (int b = 0; b < size; ++b) {
                    const Complex c = left * B(J, b);
                    if (c == Complex(0.0)) continue;
                    out[a][b] = out[a][b] + c * prod;
                }
            }
        }
    return out;
}

GradedMatrix spin_coeffs(const SURep& rep, int two_l) {
    if (two_l > kMaxSpinWord)
        throw Error(ErrorCode::BudgetExceeded, "spin coefficients limited to 2l <= 4");
    return spin_coeffs(rep, two_l, uq2_jones_wenzl(rep.q, two_l));
}

XDegreeReport xdegree_check(const SURep& rep, int two_l) {
    const GradedMatrix V = spin_coeffs(rep, two_l);
    XDegreeReport r;
    r.two_l = two_l;
    const int size = two_l + 1;
    r.degrees.assign(size, std::vector<int>(size, 0));
    for (int b = 0; b < size; ++b) r.expected.push_back(b - two_l);
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            const GradedElement& g = V[a][b];
            int dominant = r.expected[b];
            double top = -1.0;
            for (const auto& [d, m] : g.terms())
                if (m.norm() > top) {
                    top = m.norm();
                    dominant = d;
                }
            r.degrees[a][b] = dominant;
            r.off_degree_mass = std::max(r.off_degree_mass, g.mass_outside(r.expected[b]));
        }
    // a column is homogeneous of the degree shared by its nonzero entries
    for (int b = 0; b < size; ++b) {
        int col_degree = r.expected[b];
        double top = -1.0;
        for (int a = 0; a < size; ++a)
            for (const auto& [d, m] : V[a][b].terms())
                if (m.norm() > top) {
                    top = m.norm();
                    col_degree = d;
                }
        r.column_weights[-col_degree] += 1;
    }
    r.pass = r.off_degree_mass < 1e-12;
    return r;
}

TorusReport torus_weight_check(const SURep& rep, int two_l) {
    TorusReport r;
    r.two_l = two_l;
    const CMatrix jw = uq2_jones_wenzl(rep.q, two_l);
    constexpr int samples = 8;
    for (int s = 0; s < samples; ++s) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * s / samples);
        const CMatrix X = project(spin_coeffs(character_rep(rep.q, z), two_l, jw));
        CMatrix expect = CMatrix::Zero(two_l + 1, two_l + 1);
        for (int b = 0; b <= two_l; ++b) expect(b, b) = std::pow(z, two_l - 2 * b);
        r.residual = std::max(r.residual, spectral_norm(X - expect));
    }
    r.samples = samples;
    r.pass = r.residual < 1e-10;
    return r;
}

double interior_unitarity(const CMatrix& x, int blocks, int K, int reach) {
    const auto cols = interior(blocks, K, reach);
    const Index n = x.rows();
    const CMatrix I = CMatrix::Identity(n, n);
    return std::max(restricted_norm(x.adjoint() * x - I, cols),
                    restricted_norm(x * x.adjoint() - I, cols));
}

double spin_unitarity(const SURep& rep, int two_l) {
    const CMatrix X = project(spin_coeffs(rep, two_l));
    return interior_unitarity(X, two_l + 1, rep.K, 2 * two_l);
}

} // namespace tlsub
