#include "tlsub/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace tlsub {

namespace {

constexpr int kLanczosSteps = 80;

CVector lanczos_start(Index dim) {
    CVector v(dim);
    for (Index k = 0; k < dim; ++k) {
        const double t = static_cast<double>(k);
        v(k) = Complex(1.0 + 0.5 * std::sin(1.7 * t + 0.3), 0.25 * std::cos(0.9 * t));
    }
    return v.normalized();
}

double ritz_abs_max(const std::vector<double>& alpha, const std::vector<double>& beta, int used) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
    for (int k = 0; k < used; ++k) {
        t(k, k) = alpha[k];
        if (k + 1 < used) {
            t(k, k + 1) = beta[k];
            t(k + 1, k) = beta[k];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Largest |eigenvalue| of a Hermitian operator via Lanczos with full
// reorthogonalization. Stops once the top Ritz value has settled.
double lanczos_abs_max(const LinearOp& apply, Index dim) {
    const int steps = static_cast<int>(std::min<Index>(dim, kLanczosSteps));
    CMatrix basis(dim, steps);
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> ritz;
    basis.col(0) = lanczos_start(dim);
    int used = 0;
    for (int k = 0; k < steps; ++k) {
        CVector w = apply(basis.col(k));
        const double a = basis.col(k).dot(w).real();
        alpha.push_back(a);
        used = k + 1;
        for (int pass = 0; pass < 2; ++pass) {
            const CVector coeff = basis.leftCols(k + 1).adjoint() * w;
            w -= basis.leftCols(k + 1) * coeff;
        }
        const double b = w.norm();
        ritz.push_back(ritz_abs_max(alpha, beta, used));
        const double top = ritz.back();
        if (k >= 12 && std::abs(top - ritz[k - 4]) <= 1e-12 * top) break;
        double scale = 0.0;
        for (double x : alpha) scale = std::max(scale, std::abs(x));
        for (double x : beta) scale = std::max(scale, std::abs(x));
        if (k + 1 == steps || b <= 1e-14 * scale || b == 0.0) break;
        beta.push_back(b);
        basis.col(k + 1) = w / b;
    }
    return ritz.back();
}

} // namespace

Eigen::VectorXd singular_values(const CMatrix& x) {
    if (x.size() == 0) return Eigen::VectorXd();
    Eigen::BDCSVD<CMatrix> svd(x);
    return svd.singularValues();
}

double spectral_norm(const CMatrix& x) {
    if (x.size() == 0) return 0.0;
    if (std::min(x.rows(), x.cols()) <= kExactDenseLimit) return singular_values(x)(0);
    if (x.cols() <= x.rows())
        return std::sqrt(lanczos_abs_max(
            [&](const CMatrix& v) { return CMatrix(x.adjoint() * (x * v)); }, x.cols()));
    return std::sqrt(lanczos_abs_max(
        [&](const CMatrix& v) { return CMatrix(x * (x.adjoint() * v)); }, x.rows()));
}

double hermitian_norm(const CMatrix& h) {
    if (h.size() == 0) return 0.0;
    if (h.rows() <= kExactDenseLimit) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    return lanczos_abs_max([&](const CMatrix& v) { return CMatrix(h * v); }, h.rows());
}

double operator_norm(const LinearOp& apply, const LinearOp& apply_adjoint, Index rows,
                     Index cols) {
    if (rows == 0 || cols == 0) return 0.0;
    if (std::min(rows, cols) <= kExactNormLimit) {
        if (cols <= rows) return spectral_norm(apply(CMatrix::Identity(cols, cols)));
        return spectral_norm(apply_adjoint(CMatrix::Identity(rows, rows)));
    }
    if (cols <= rows)
        return std::sqrt(lanczos_abs_max([&](const CMatrix& v) { return apply_adjoint(apply(v)); },
                                         cols));
    return std::sqrt(
        lanczos_abs_max([&](const CMatrix& v) { return apply(apply_adjoint(v)); }, rows));
}

double hermitian_operator_norm(const LinearOp& apply, Index dim) {
    if (dim == 0) return 0.0;
    if (dim <= kExactNormLimit) return hermitian_norm(apply(CMatrix::Identity(dim, dim)));
    return lanczos_abs_max(apply, dim);
}

double isometry_defect(const CMatrix& x) {
    if (x.cols() <= kExactNormLimit)
        return hermitian_norm(x.adjoint() * x - CMatrix::Identity(x.cols(), x.cols()));
    return hermitian_operator_norm(
        [&](const CMatrix& v) { return CMatrix(x.adjoint() * (x * v) - v); }, x.cols());
}

double coisometry_defect(const CMatrix& x) {
    if (x.rows() <= kExactNormLimit)
        return hermitian_norm(x * x.adjoint() - CMatrix::Identity(x.rows(), x.rows()));
    return hermitian_operator_norm(
        [&](const CMatrix& v) { return CMatrix(x * (x.adjoint() * v) - v); }, x.rows());
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

CMatrix apply_kron(const CMatrix& a, const CMatrix& b, const CMatrix& x) {
    const Index p = a.rows(), pin = a.cols();
    const Index r = b.rows(), rin = b.cols();
    const Index ncols = x.cols();
    if (x.rows() != pin * rin)
        throw std::invalid_argument("apply_kron: dimension mismatch");

    // (I (x) b): view x as rin x (pin*ncols).
    CMatrix y(r * pin, ncols);
    {
        Eigen::Map<const CMatrix> xv(x.data(), rin, pin * ncols);
        Eigen::Map<CMatrix> yv(y.data(), r, pin * ncols);
        yv.noalias() = b * xv;
    }
    // (a (x) I): one product per slot of the second factor.
    CMatrix out(p * r, ncols);
    using Strided = Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>;
    for (Index k = 0; k < r; ++k) {
        Eigen::Map<const CMatrix, 0, Strided> yk(y.data() + k, pin, ncols,
                                                 Strided(y.rows(), r));
        Eigen::Map<CMatrix, 0, Strided> ok(out.data() + k, p, ncols, Strided(out.rows(), r));
        ok = a * yk;
    }
    return out;
}

CMatrix strided_rows(const CMatrix& x, Index slot, Index slots) {
    const Index count = x.rows() / slots;
    return x(Eigen::seqN(slot, count, slots), Eigen::all);
}

void fix_column_phases(CMatrix& basis) {
    for (Index c = 0; c < basis.cols(); ++c) {
        Index best = 0;
        double best_abs = -1.0;
        for (Index r = 0; r < basis.rows(); ++r) {
            const double v = std::abs(basis(r, c));
            if (v > best_abs * (1.0 + 1e-12)) {
                best_abs = v;
                best = r;
            }
        }
        if (best_abs > 0.0) basis.col(c) *= std::conj(basis(best, c)) / best_abs;
    }
}

} // namespace tlsub
