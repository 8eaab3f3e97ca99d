#include "tlsub/relations.hpp"

#include <algorithm>
#include <cmath>

namespace tlsub {

namespace {

CMatrix stacked_creators(const FockTruncation& fock, int n) {
    const Index dn = fock.dim(n);
    CMatrix s(fock.dim(n + 1), fock.m() * dn);
    for (int i = 0; i < fock.m(); ++i) s.middleCols(i * dn, dn) = fock.creation(i, n);
    return s;
}

// R_i = sum_k a_ik S_k[n], stacked vertically.
CMatrix twisted_creators(const FockTruncation& fock, int n) {
    const int m = fock.m();
    const Index rows = fock.dim(n + 1);
    const CMatrix& A = fock.data().A;
    CMatrix r = CMatrix::Zero(m * rows, fock.dim(n));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            if (A(i, k) != Complex(0.0)) r.middleRows(i * rows, rows) += A(i, k) * fock.creation(k, n);
    return r;
}

void finish(RelationReport& r) {
    r.pass = true;
    for (const auto& [n, v] : r.per_level)
        if (!(v <= r.tolerance)) r.pass = false;
}

const CVector& antidiagonal_of(const FockTruncation& fock) {
    if (!fock.data().is_antidiagonal())
        throw Error(ErrorCode::RequiresAntidiagonal, "relation needs antidiagonal A");
    return *fock.data().antidiagonal;
}

} // namespace

double RelationReport::max_residual() const {
    double best = 0.0;
    for (const auto& [n, v] : per_level) best = std::max(best, v);
    return best;
}

RelationReport check_vacuum(const FockTruncation& fock, double tolerance) {
    RelationReport r{"vacuum", {}, tolerance, false,
                     "sum_i S_i S_i* = 1 - vacuum projection on levels 0..N"};
    r.per_level.emplace_back(0, 0.0);
    for (int n = 1; n <= fock.levels(); ++n)
        r.per_level.emplace_back(n, coisometry_defect(stacked_creators(fock, n - 1)));
    finish(r);
    return r;
}

RelationReport check_quadratic(const FockTruncation& fock, double tolerance) {
    RelationReport r{"quadratic", {}, tolerance, false,
                     "sum_ij a_ij S_i S_j on levels 0..N-2"};
    for (int n = 0; n + 2 <= fock.levels(); ++n) {
        const CMatrix R = twisted_creators(fock, n);
        const Index rows = fock.dim(n + 1);
        CMatrix total = CMatrix::Zero(fock.dim(n + 2), fock.dim(n));
        for (int i = 0; i < fock.m(); ++i)
            total.noalias() += fock.creation(i, n + 1) * R.middleRows(i * rows, rows);
        r.per_level.emplace_back(n, spectral_norm(total));
    }
    finish(r);
    return r;
}

RelationReport check_mixed(const FockTruncation& fock, double tolerance) {
    RelationReport r{"mixed", {}, tolerance, false,
                     "S_i* S_j + phi(n) sum_kl a_ik conj(a_jl) S_k S_l* = delta_ij on levels "
                     "0..N-1"};
    const double q = fock.data().q;
    for (int n = 0; n < fock.levels(); ++n) {
        const CMatrix S = stacked_creators(fock, n);
        const Index dim = S.cols();
        double res;
        if (n == 0) {
            res = isometry_defect(S);
        } else {
            const CMatrix R = twisted_creators(fock, n - 1);
            const double ph = phi(n, q);
            if (dim <= kExactNormLimit) {
                CMatrix H = S.adjoint() * S;
                H.noalias() += ph * (R * R.adjoint());
                H -= CMatrix::Identity(dim, dim);
                res = hermitian_norm(H);
            } else {
                res = hermitian_operator_norm(
                    [&](const CMatrix& v) {
                        CMatrix out = S.adjoint() * (S * v);
                        out.noalias() += ph * (R * (R.adjoint() * v));
                        return CMatrix(out - v);
                    },
                    dim);
            }
        }
        r.per_level.emplace_back(n, res);
    }
    finish(r);
    return r;
}

RelationReport check_gauge(const FockTruncation& fock, double tolerance) {
    const CVector& a = antidiagonal_of(fock);
    const int m = fock.m();
    RelationReport r{"gauge", {}, tolerance, false,
                     "Z S_i = c_i S_i Z with c_i = -a_i conj(a_{m-i+1}), levels 0..N-1"};
    const BlockOperator Z = gauge(fock);
    for (int n = 0; n < fock.levels(); ++n) {
        const CMatrix& Zn = Z.block(n);
        const Index d0 = fock.dim(n), d1 = fock.dim(n + 1);
        // All creation blocks side by side so the large gauge block is applied once.
        CMatrix stacked(d1, m * d0);
        for (int i = 0; i < m; ++i) stacked.middleCols(i * d0, d0) = fock.creation(i, n);
        CMatrix diff = Z.block(n + 1) * stacked;
        double worst = 0.0;
        for (int i = 0; i < m; ++i) {
            const Complex c = -a(i) * std::conj(a(m - 1 - i));
            auto block = diff.middleCols(i * d0, d0);
            block.noalias() -= c * (fock.creation(i, n) * Zn);
            worst = std::max(worst, spectral_norm(block));
        }
        r.per_level.emplace_back(n, worst);
    }
    finish(r);
    return r;
}

RelationReport check_iota(const FockTruncation& fock, double tolerance) {
    RelationReport r{"iota_isometry", {}, tolerance, false,
                     "iota_n* iota_n = 1 on levels 1..N"};
    for (int n = 1; n <= fock.levels(); ++n)
        r.per_level.emplace_back(n, isometry_defect(fock.iota(n)));
    finish(r);
    return r;
}

CPDefectProfile cp_defect_profile(const FockTruncation& fock, double tolerance) {
    const CVector& a = antidiagonal_of(fock);
    const int m = fock.m();
    const double q = fock.data().q;
    const double amax2 = a.cwiseAbs2().maxCoeff();
    CPDefectProfile p;
    p.report = {"cp_defect", {}, tolerance, false,
                "Gram defects of [q^(1/2) conj(a_i) S_{m-i+1}* ; S_i] from sum_i H_{n+1} to "
                "H_n + H_{n+2}, levels 1..N-2; bound max|a_i|^2 q^(n+1)/[n+1]_q, decreasing "
                "from level 2"};
    const double sq = std::sqrt(q);
    bool pass = true;
    double previous = 0.0;
    for (int n = 1; n + 2 <= fock.levels(); ++n) {
        const Index d0 = fock.dim(n), d1 = fock.dim(n + 1), d2 = fock.dim(n + 2);
        CMatrix M(d0 + d2, m * d1);
        for (int i = 0; i < m; ++i) {
            M.block(0, i * d1, d0, d1) =
                (sq * std::conj(a(i))) * fock.creation(m - 1 - i, n).adjoint();
            M.block(d0, i * d1, d2, d1) = fock.creation(i, n + 1);
        }
        const double row = coisometry_defect(M);
        const double col = isometry_defect(M);
        const double worst = std::max(row, col);
        const double bound = amax2 * std::pow(q, n + 1) / qint(n + 1, q);
        p.row_defect.push_back(row);
        p.column_defect.push_back(col);
        p.bound.push_back(bound);
        p.closed_form.push_back(std::pow(q, n + 2) / qint(n + 1, q));
        p.report.per_level.emplace_back(n, worst);
        if (!(worst <= bound + tolerance)) pass = false;
        if (n >= 3 && !(worst < previous)) pass = false;
        previous = worst;
    }
    p.report.pass = pass;
    return p;
}

std::vector<RelationReport> verify_all(const FockTruncation& fock, double tolerance) {
    std::vector<RelationReport> out;
    out.push_back(check_iota(fock, tolerance));
    out.push_back(check_vacuum(fock, tolerance));
    out.push_back(check_quadratic(fock, tolerance));
    out.push_back(check_mixed(fock, tolerance));
    if (fock.data().is_antidiagonal()) {
        out.push_back(check_gauge(fock, tolerance));
        out.push_back(cp_defect_profile(fock, tolerance).report);
    }
    return out;
}

} // namespace tlsub
