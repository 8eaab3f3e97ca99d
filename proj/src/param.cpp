#include "tlsub/param.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tlsub {

namespace {

bool antidiagonal_within(const CMatrix& a, double tol) {
    const Index m = a.rows();
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            if (i + j != m - 1 && std::abs(a(i, j)) > tol) return false;
    return true;
}

CVector read_antidiagonal(const CMatrix& a) {
    const Index m = a.rows();
    CVector out(m);
    for (Index i = 0; i < m; ++i) out(i) = a(i, m - 1 - i);
    return out;
}

struct JointSpace {
    double kappa;
    Complex mu;
    CMatrix basis;
    bool used = false;
};

} // namespace

double qint(int n, double q) {
    if (n <= 0) return 0.0;
    if (q == 1.0) return n;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += std::pow(q, n - 1 - 2 * k);
    return sum;
}

double phi(int n, double q) { return qint(n, q) / qint(n + 1, q); }

double q_from_trace(double t, double tol) {
    if (!std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "trace is not finite");
    if (t < 2.0 - tol) throw Error(ErrorCode::TraceTooSmall, "Tr(A*A) < 2");
    if (std::abs(t - 2.0) <= tol) return 1.0;
    return 2.0 / (t + std::sqrt(t * t - 4.0));
}

CMatrix antidiagonal_matrix(const CVector& a) {
    const Index m = a.size();
    CMatrix out = CMatrix::Zero(m, m);
    for (Index i = 0; i < m; ++i) out(i, m - 1 - i) = a(i);
    return out;
}

TLReport validate(const CMatrix& A, double tol) {
    if (A.rows() != A.cols() || A.rows() < 2)
        throw Error(ErrorCode::InvalidArgument, "A must be square with m >= 2");
    if (!A.allFinite()) throw Error(ErrorCode::InvalidArgument, "A has non-finite entries");
    TLReport rep;
    const Index m = A.rows();
    const Eigen::VectorXd sv = singular_values(A);
    rep.min_singular_value = sv(m - 1);
    if (rep.min_singular_value <= tol) throw Error(ErrorCode::SingularMatrix, "A is singular");

    const CMatrix B = A * A.conjugate();
    const double c = singular_values(B).mean();
    const CMatrix Bn = B / c;
    rep.scale = std::sqrt(c);
    rep.unitarity_residual = hermitian_norm(Bn * Bn.adjoint() - CMatrix::Identity(m, m));
    rep.is_tl = rep.unitarity_residual <= tol;

    // (e(x)1)(1(x)e)(e(x)1) = (v(x)1) K (v*(x)1) with K = T T*, T = (conj(V) V)^T.
    const CMatrix V = A / A.norm();
    const CMatrix T = (V.conjugate() * V).transpose();
    const CMatrix K = T * T.adjoint();
    const double fit = K.trace().real() / static_cast<double>(m);
    rep.lambda = 1.0 / fit;
    rep.lambda_residual = hermitian_norm(K - fit * CMatrix::Identity(m, m));
    return rep;
}

TLData normalize(const CMatrix& A, double tol) {
    TLData d;
    d.report = validate(A, tol);
    if (!d.report.is_tl)
        throw Error(ErrorCode::NotTemperleyLieb, "A conj(A) is not a multiple of a unitary");
    d.m = static_cast<int>(A.rows());
    d.tol = tol;
    d.A = A / d.report.scale;
    d.trace = d.A.squaredNorm();
    d.q = q_from_trace(d.trace, tol);
    if (antidiagonal_within(d.A, tol)) d.antidiagonal = read_antidiagonal(d.A);
    const Index m = d.m;
    d.P.resize(m * m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) d.P(i * m + j) = d.A(i, j);
    d.v = d.P / d.P.norm();
    d.e = d.v * d.v.adjoint();
    return d;
}

Canonical canonicalize(const CMatrix& input, double tol) {
    const TLData d = normalize(input, tol);
    const CMatrix& A = d.A;
    const Index m = d.m;
    Canonical out;
    if (d.antidiagonal) {
        out.w = CMatrix::Identity(m, m);
        out.a = *d.antidiagonal;
        out.residual = (A - antidiagonal_matrix(out.a)).norm();
        return out;
    }

    constexpr double cluster = 1e-6;
    const CMatrix U = A * A.conjugate();
    const CMatrix Kmat = A.transpose() * A.conjugate();
    auto J = [&](const CVector& x) -> CVector { return A * x.conjugate(); };

    // joint eigenspaces of Kmat and U
    std::vector<JointSpace> spaces;
    Eigen::SelfAdjointEigenSolver<CMatrix> ks(Kmat);
    const Eigen::VectorXd kv = ks.eigenvalues();
    for (Index start = 0; start < m;) {
        Index stop = start + 1;
        while (stop < m && std::abs(kv(stop) - kv(start)) <= cluster * std::max(1.0, kv(start)))
            ++stop;
        const CMatrix Q = ks.eigenvectors().middleCols(start, stop - start);
        const double kappa = kv.segment(start, stop - start).mean();
        const CMatrix Uk = Q.adjoint() * U * Q;
        Eigen::ComplexSchur<CMatrix> schur(Uk);
        const CMatrix& Z = schur.matrixU();
        const CMatrix& Tm = schur.matrixT();
        std::vector<bool> taken(Tm.rows(), false);
        for (Index i = 0; i < Tm.rows(); ++i) {
            if (taken[i]) continue;
            std::vector<Index> members;
            for (Index j = i; j < Tm.rows(); ++j)
                if (!taken[j] && std::abs(Tm(j, j) - Tm(i, i)) <= cluster) {
                    members.push_back(j);
                    taken[j] = true;
                }
            CMatrix basis(m, static_cast<Index>(members.size()));
            Complex mu = 0.0;
            for (std::size_t k = 0; k < members.size(); ++k) {
                basis.col(k) = Q * Z.col(members[k]);
                mu += Tm(members[k], members[k]);
            }
            mu /= static_cast<double>(members.size());
            // Schur vectors of a normal matrix are eigenvectors; tidy up anyway.
            Eigen::HouseholderQR<CMatrix> qr(basis);
            basis = qr.householderQ() * CMatrix::Identity(m, basis.cols());
            spaces.push_back({kappa, mu / std::abs(mu), basis});
        }
        start = stop;
    }

    CMatrix B = CMatrix::Zero(m, m);
    Index front = 0, back = m - 1;
    auto place_pair = [&](const CVector& x, const CVector& y) {
        if (front >= back)
            throw Error(ErrorCode::CanonicalizationFailed, "pairing ran out of positions");
        B.col(front++) = x;
        B.col(back--) = y;
    };

    for (auto& s : spaces) {
        if (s.used) continue;
        s.used = true;
        const bool self = std::abs(s.kappa - 1.0) <= cluster &&
                          std::abs(s.mu.imag()) <= cluster;
        if (!self) {
            JointSpace* partner = nullptr;
            for (auto& t : spaces)
                if (!t.used && std::abs(t.kappa * s.kappa - 1.0) <= cluster &&
                    std::abs(t.mu - std::conj(s.mu)) <= cluster)
                    partner = &t;
            if (partner == nullptr || partner->basis.cols() != s.basis.cols())
                throw Error(ErrorCode::CanonicalizationFailed, "unpaired joint eigenspace");
            partner->used = true;
            for (Index k = 0; k < s.basis.cols(); ++k)
                place_pair(s.basis.col(k), J(s.basis.col(k)) / std::sqrt(s.kappa));
        } else if (s.mu.real() < 0.0) {
            // J^2 = -1 here: pair x with Jx.
            CMatrix R = s.basis;
            while (R.cols() > 0) {
                const CVector x = R.col(0);
                const CVector y = J(x);
                place_pair(x, y);
                CMatrix rest = R - x * (x.adjoint() * R) - y * (y.adjoint() * R);
                Eigen::JacobiSVD<CMatrix> svd(rest, Eigen::ComputeThinU);
                Index keep = 0;
                while (keep < svd.singularValues().size() && svd.singularValues()(keep) > 0.5)
                    ++keep;
                R = svd.matrixU().leftCols(keep);
            }
        } else {
            // J is a conjugation on this space: find a J-fixed orthonormal basis.
            const CMatrix& Q = s.basis;
            const Index n = Q.cols();
            const CMatrix M = Q.adjoint() * A * Q.conjugate();
            Eigen::MatrixXd R(2 * n, 2 * n);
            R << M.real(), M.imag(), M.imag(), -M.real();
            const Eigen::MatrixXd Rs = 0.5 * (R + R.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Rs);
            std::vector<CVector> fixed;
            for (Index k = 0; k < 2 * n; ++k) {
                if (es.eigenvalues()(k) < 0.0) continue;
                const Eigen::VectorXd c = es.eigenvectors().col(k);
                CVector cc(n);
                for (Index r = 0; r < n; ++r) cc(r) = Complex(c(r), c(n + r));
                fixed.push_back((Q * cc).normalized());
            }
            if (static_cast<Index>(fixed.size()) != n)
                throw Error(ErrorCode::CanonicalizationFailed, "no real structure found");
            const double h = 1.0 / std::sqrt(2.0);
            std::size_t k = 0;
            for (; k + 1 < fixed.size(); k += 2)
                place_pair(h * (fixed[k] + Complex(0, 1) * fixed[k + 1]),
                           h * (fixed[k] - Complex(0, 1) * fixed[k + 1]));
            if (k < fixed.size()) {
                if (front != back)
                    throw Error(ErrorCode::CanonicalizationFailed, "unpaired fixed vector");
                B.col(front) = fixed[k];
                ++front;
            }
        }
    }
    if (front <= back) throw Error(ErrorCode::CanonicalizationFailed, "incomplete basis");

    out.w = B.adjoint();
    const CMatrix At = out.w * A * out.w.transpose();
    out.a = read_antidiagonal(At);
    out.residual = (At - antidiagonal_matrix(out.a)).norm();
    const double unitary = hermitian_norm(out.w * out.w.adjoint() - CMatrix::Identity(m, m));
    if (out.residual > std::max(tol, 1e-9) || unitary > 1e-8)
        throw Error(ErrorCode::CanonicalizationFailed, "residual too large");
    return out;
}

} // namespace tlsub
