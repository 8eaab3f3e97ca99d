#include "tlsub/quasihom.hpp"

#include <algorithm>
#include <cmath>

namespace tlsub {

namespace {

void finish(RelationReport& r) {
    r.pass = true;
    for (const auto& [n, v] : r.per_level)
        if (!(v <= r.tolerance)) r.pass = false;
}

} // namespace

CMatrix build_w(const FockTruncation& fock, int n) {
    if (n < 0 || n + 2 > fock.levels())
        throw Error(ErrorCode::LevelOutOfRange, "w_n needs 0 <= n <= N-2");
    const int m = fock.m();
    const Index dn = fock.dim(n), d1 = fock.dim(n + 1);
    const CMatrix& io = fock.iota(n + 1);
    const CMatrix& A = fock.data().A;
    const double scale = std::sqrt(phi(n + 1, fock.data().q));
    CMatrix w(d1 * m, dn);
    for (Index b = 0; b < dn; ++b) {
        const CMatrix r = scale * (io.middleRows(b * m, m).adjoint() * A); // (c, k)
        for (Index c = 0; c < d1; ++c)
            for (Index k = 0; k < m; ++k) w(c * m + k, b) = r(c, k);
    }
    return w;
}

CMatrix QuasiData::theta_phi(int k) const {
    if (k < 0 || k >= fock->levels())
        throw Error(ErrorCode::LevelOutOfRange, "theta_phi needs 0 <= k <= N-1");
    if (k == 0) return fock->iota(1);
    const CMatrix& io = fock->iota(k + 1);
    const CMatrix& wk = w[k - 1];
    CMatrix out(io.rows(), io.cols() + wk.cols());
    out << io, wk;
    return out;
}

QuasiData build_theta_phi(std::shared_ptr<const FockTruncation> fock, double tolerance) {
    QuasiData qd;
    qd.fock = std::move(fock);
    const FockTruncation& f = *qd.fock;
    const int N = f.levels();
    if (N < 2) throw Error(ErrorCode::LevelOutOfRange, "quasi-homomorphism needs N >= 2");
    for (int n = 0; n + 2 <= N; ++n) qd.w.push_back(build_w(f, n));

    qd.isometry = {"w_isometry", {}, tolerance, false, "w_n* w_n = 1 on levels 0..N-2"};
    for (int n = 0; n + 2 <= N; ++n)
        qd.isometry.per_level.emplace_back(n, isometry_defect(qd.w[n]));
    finish(qd.isometry);

    qd.orthogonality = {"theta_phi_orthogonality", {}, tolerance, false,
                        "iota_{k+1}* w_{k-1} = 0 on levels 1..N-1"};
    for (int k = 1; k < N; ++k)
        qd.orthogonality.per_level.emplace_back(
            k, spectral_norm(f.iota(k + 1).adjoint() * qd.w[k - 1]));
    finish(qd.orthogonality);

    qd.complement = {"complement", {}, tolerance, false,
                     "w_{n-1} w_{n-1}* + iota_{n+1} iota_{n+1}* = 1 on levels 1..N-1"};
    qd.coisometry = {"theta_phi_unitarity", {}, tolerance, false,
                     "[iota_{k+1} | w_{k-1}] unitary on levels 0..N-1"};
    qd.kernel_dim = 1; // the vacuum of the untwisted summand
    for (int k = 0; k < N; ++k) {
        const CMatrix B = qd.theta_phi(k);
        const double co = coisometry_defect(B);
        const double iso = isometry_defect(B);
        if (k >= 1) qd.complement.per_level.emplace_back(k, co);
        qd.coisometry.per_level.emplace_back(k, std::max(co, iso));
        Index rank = 0;
        if (iso < 0.5) {
            rank = B.cols();
        } else {
            const Eigen::VectorXd sv = singular_values(B);
            for (Index j = 0; j < sv.size(); ++j)
                if (sv(j) > 0.5) ++rank;
        }
        qd.kernel_dim += static_cast<int>(B.cols() - rank);
    }
    finish(qd.complement);
    finish(qd.coisometry);
    return qd;
}

OverlapResult overlap(const FockTruncation& fock, int n, Index dense_limit) {
    if (n < 1 || n + 2 > fock.levels())
        throw Error(ErrorCode::LevelOutOfRange, "overlap needs 1 <= n <= N-2");
    const int m = fock.m();
    if (std::pow(static_cast<double>(m), n + 2) > static_cast<double>(dense_limit))
        throw Error(ErrorCode::BudgetExceeded, "dense tensor power exceeds the dense budget");
    const CMatrix Im = CMatrix::Identity(m, m);
    auto dense_w = [&](int k) {
        const CMatrix E = embed_dense(fock, k, dense_limit);
        const CMatrix E1 = embed_dense(fock, k + 1, dense_limit);
        return CMatrix(apply_kron(E1, Im, build_w(fock, k)) * E.adjoint());
    };
    const CMatrix Wn = dense_w(n);
    const CMatrix Wp = kron(Im, dense_w(n - 1));
    const CMatrix En = embed_dense(fock, n, dense_limit);
    const CMatrix f = En * En.adjoint();
    const CMatrix X = Wn.adjoint() * Wp;
    OverlapResult r;
    r.scalar = (f * X).trace().real() / static_cast<double>(fock.dim(n));
    const double q = fock.data().q;
    r.expected = std::sqrt(phi(n, q) / phi(n + 1, q));
    r.residual = spectral_norm(X - r.scalar * f);
    return r;
}

double defect_closed_form(int n, double q) {
    const double x = 1.0 / std::pow(qint(n + 1, q), 2);
    return std::sqrt(2.0) * std::sqrt(x / (1.0 + std::sqrt(1.0 - x)));
}

DefectNorm defect_norm(const FockTruncation& fock, int n, Index dense_limit) {
    if (n < 1 || n + 2 > fock.levels())
        throw Error(ErrorCode::LevelOutOfRange, "defect needs 1 <= n <= N-2");
    const int m = fock.m();
    if (std::pow(static_cast<double>(m), n + 2) > static_cast<double>(dense_limit))
        throw Error(ErrorCode::BudgetExceeded, "dense tensor power exceeds the dense budget");
    const CMatrix Im = CMatrix::Identity(m, m);
    auto dense_w = [&](int k) {
        const CMatrix E = embed_dense(fock, k, dense_limit);
        const CMatrix E1 = embed_dense(fock, k + 1, dense_limit);
        return CMatrix(apply_kron(E1, Im, build_w(fock, k)) * E.adjoint());
    };
    const CMatrix En = embed_dense(fock, n, dense_limit);
    const CMatrix f = En * En.adjoint();
    DefectNorm d;
    d.measured = spectral_norm(dense_w(n) - kron(Im, dense_w(n - 1)) * f);
    d.closed_form = defect_closed_form(n, fock.data().q);
    return d;
}

QuasiBlockReport quasi_blocks(const QuasiData& qd, int i, double tolerance) {
    const FockTruncation& f = *qd.fock;
    const int m = f.m();
    const int N = f.levels();
    if (i < 0 || i >= m) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    const CMatrix Im = CMatrix::Identity(m, m);
    const double q = f.data().q;
    QuasiBlockReport rep;
    rep.total = {"quasi_total", {}, tolerance, false,
                 "||phi_+(S_i) - phi_-(S_i)|| by total degree 0..N-1; must decay"};
    rep.theta = {"quasi_theta", {}, tolerance, false,
                 "(S_i* (x) 1) iota_n = iota_{n-1} S_i* on levels 2..N"};
    rep.phi_part = {"quasi_phi", {}, tolerance, false,
                    "||(S_i* (x) 1) w_n - w_{n-1} S_i*|| <= 2 defect(n), levels 1..N-2"};

    for (int t = 0; t < N; ++t) {
        const Index dt = f.dim(t), dt1 = f.dim(t + 1);
        const Index dm1 = t >= 1 ? f.dim(t - 1) : 0, dm2 = t >= 2 ? f.dim(t - 2) : 0;
        CMatrix blk = CMatrix::Zero(dt1 + dm1, dt + dm2);
        blk.topLeftCorner(dt1, dt) = f.creation(i, t);
        if (t >= 1) {
            const CMatrix& S = f.creation(i, t - 1);
            const CMatrix SI = apply_kron(S, Im, f.iota(t));
            blk.topLeftCorner(dt1, dt) -= f.iota(t + 1).adjoint() * SI;
            blk.bottomLeftCorner(dm1, dt) = -(qd.w[t - 1].adjoint() * SI);
            if (t >= 2) {
                const CMatrix SW = apply_kron(S, Im, qd.w[t - 2]);
                blk.topRightCorner(dt1, dm2) = -(f.iota(t + 1).adjoint() * SW);
                blk.bottomRightCorner(dm1, dm2) =
                    f.creation(i, t - 2) - qd.w[t - 1].adjoint() * SW;
            }
        }
        rep.total.per_level.emplace_back(t, spectral_norm(blk));
    }
    rep.total.pass = rep.total.per_level.size() >= 2 &&
                     rep.total.per_level.back().second < rep.total.per_level.front().second;

    for (int n = 2; n <= N; ++n) {
        const CMatrix lhs = apply_kron(f.creation(i, n - 2).adjoint(), Im, f.iota(n));
        const CMatrix rhs = f.iota(n - 1) * f.creation(i, n - 1).adjoint();
        rep.theta.per_level.emplace_back(n, spectral_norm(lhs - rhs));
    }
    finish(rep.theta);

    bool phi_ok = true;
    for (int n = 1; n + 2 <= N; ++n) {
        const CMatrix lhs = apply_kron(f.creation(i, n).adjoint(), Im, qd.w[n]);
        const CMatrix rhs = qd.w[n - 1] * f.creation(i, n - 1).adjoint();
        const double v = spectral_norm(lhs - rhs);
        const double env = 2.0 * defect_closed_form(n, q);
        rep.phi_part.per_level.emplace_back(n, v);
        rep.envelope.push_back(env);
        if (!(v <= env + tolerance)) phi_ok = false;
    }
    rep.phi_part.pass = phi_ok;
    return rep;
}

RelationReport unit_difference(const QuasiData& qd, double tolerance) {
    const FockTruncation& f = *qd.fock;
    RelationReport r{"unit_difference", {}, tolerance, false,
                     "phi_+(1) - phi_-(1) = (e_0, 0) on total degrees 0..N-1"};
    // degree 0: phi_-(1) vanishes on the vacuum, leaving exactly e_0
    r.per_level.emplace_back(0, 0.0);
    for (int t = 1; t < f.levels(); ++t) {
        const CMatrix B = qd.theta_phi(t - 1);
        r.per_level.emplace_back(t, isometry_defect(B));
    }
    finish(r);
    return r;
}

IndexRanks index_ranks(const QuasiData& qd, int n) {
    const FockTruncation& f = *qd.fock;
    if (n < 1 || n + 2 > f.levels())
        throw Error(ErrorCode::LevelOutOfRange, "index ranks need 1 <= n <= N-2");
    const int m = f.m();
    IndexRanks r;
    // p = projection on the first basis vector of H_n; psi_+(p) = p + p
    const Index dn = f.dim(n);
    CMatrix plus = CMatrix::Zero(2 * dn, 2 * dn);
    plus(0, 0) = 1.0;
    plus(dn, dn) = 1.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(plus, Eigen::EigenvaluesOnly);
    for (Index k = 0; k < es.eigenvalues().size(); ++k)
        if (es.eigenvalues()(k) > 0.5) ++r.rank_plus;
    const CMatrix B = qd.theta_phi(n);
    const CMatrix R = B.topRows(m); // (p (x) 1) B restricted to the range of p (x) 1
    const Eigen::VectorXd sv = singular_values(R);
    double kept = 1e300, dropped = 0.0;
    for (Index k = 0; k < sv.size(); ++k) {
        const double ev = sv(k) * sv(k);
        if (ev > 0.5) {
            ++r.rank_minus;
            kept = std::min(kept, ev);
        } else {
            dropped = std::max(dropped, ev);
        }
    }
    r.gap = r.rank_minus > 0 ? kept - dropped : 0.0;
    return r;
}

} // namespace tlsub
