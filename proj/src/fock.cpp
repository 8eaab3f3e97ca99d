#include "tlsub/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tlsub {

namespace {

// Orthonormal basis of ker(C), phases fixed. The rank is read from the
// singular values of the triangular factor of C*, which equal those of C.
CMatrix kernel_basis(const CMatrix& C, double tol) {
    const Index n = C.cols();
    if (C.rows() == 0) return CMatrix::Identity(n, n);
    const CMatrix Cs = C.adjoint();
    Eigen::ColPivHouseholderQR<CMatrix> qr(Cs);
    const Index k = std::min(Cs.rows(), Cs.cols());
    const CMatrix R = qr.matrixR().topRows(k).triangularView<Eigen::Upper>();
    const Eigen::VectorXd sv = singular_values(R);
    const double top = sv.size() ? sv(0) : 0.0;
    Index rank = 0;
    for (Index j = 0; j < sv.size(); ++j) {
        const double s = sv(j);
        if (s >= tol * top && s <= 10.0 * tol * top)
            throw Error(ErrorCode::RankAmbiguous,
                        "singular value near the rank threshold in the level contraction");
        if (s > tol * top) ++rank;
    }
    CMatrix sel = CMatrix::Zero(n, n - rank);
    sel.bottomRows(n - rank).setIdentity();
    CMatrix basis = qr.householderQ() * sel;
    fix_column_phases(basis);
    return basis;
}

} // namespace

std::vector<Index> level_dims(int m, int N) {
    std::vector<Index> d(static_cast<std::size_t>(N) + 1);
    d[0] = 1;
    if (N >= 1) d[1] = m;
    for (int n = 1; n < N; ++n) d[n + 1] = m * d[n] - d[n - 1];
    return d;
}

std::uint64_t estimate_memory(int m, int N) {
    const auto d = level_dims(m, N);
    long double bytes = 0.0L;
    const long double c = sizeof(Complex);
    for (int n = 1; n <= N; ++n) bytes += c * m * d[n - 1] * d[n];
    for (int n = 0; n < N; ++n) {
        bytes += c * (long double)(m * d[n]) * (m * d[n]);
        bytes += c * m * d[n] * d[n + 1];
    }
    if (N >= 1) bytes += 3.0L * c * (long double)(m * d[N - 1]) * (m * d[N - 1]);
    if (bytes > (long double)std::numeric_limits<std::uint64_t>::max() / 2)
        return std::numeric_limits<std::uint64_t>::max() / 2;
    return static_cast<std::uint64_t>(bytes);
}

Index FockTruncation::dim(int n) const {
    if (n < 0 || n > levels_) throw Error(ErrorCode::LevelOutOfRange, "level outside truncation");
    return dims_[n];
}

const CMatrix& FockTruncation::iota(int n) const {
    if (n < 1 || n > levels_) throw Error(ErrorCode::LevelOutOfRange, "iota level out of range");
    return iota_[n];
}

const CMatrix& FockTruncation::transfer(int n) const {
    if (n < 0 || n >= levels_)
        throw Error(ErrorCode::LevelOutOfRange, "transfer level out of range");
    return transfer_[n];
}

const CMatrix& FockTruncation::creation(int i, int n) const {
    if (i < 0 || i >= m()) throw Error(ErrorCode::InvalidArgument, "generator index out of range");
    if (n < 0 || n >= levels_)
        throw Error(ErrorCode::LevelOutOfRange, "creation level out of range");
    return creation_[i][n];
}

BlockOperator FockTruncation::creation_operator(int i) const {
    std::vector<CMatrix> blocks;
    for (int n = 0; n < levels_; ++n) blocks.push_back(creation(i, n));
    return BlockOperator(1, dims_, std::move(blocks));
}

BlockOperator FockTruncation::level_function(const std::vector<double>& f) const {
    if (static_cast<int>(f.size()) != levels_ + 1)
        throw Error(ErrorCode::InvalidArgument, "need one value per level");
    std::vector<CMatrix> blocks;
    for (int n = 0; n <= levels_; ++n)
        blocks.push_back(Complex(f[n]) * CMatrix::Identity(dims_[n], dims_[n]));
    return BlockOperator(0, dims_, std::move(blocks));
}

BlockOperator FockTruncation::identity() const {
    return level_function(std::vector<double>(levels_ + 1, 1.0));
}

BlockOperator FockTruncation::vacuum_projection() const {
    std::vector<double> f(levels_ + 1, 0.0);
    f[0] = 1.0;
    return level_function(f);
}

void FockTruncation::corrupt_iota(int n, double eps) {
    if (n < 1 || n > levels_) throw Error(ErrorCode::LevelOutOfRange, "iota level out of range");
    iota_[n](0, 0) += eps;
    const Index d = dims_[n - 1];
    for (int i = 0; i < m(); ++i)
        creation_[i][n - 1] = iota_[n].adjoint() * transfer_[n - 1].middleCols(i * d, d);
}

FockTruncation build(const TLData& data, int N, const BuildOptions& opts) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "need at least one level");
    const int m = data.m;
    const std::uint64_t need = estimate_memory(m, N);
    if (need > opts.memory_budget)
        throw Error(ErrorCode::BudgetExceeded,
                    "estimated memory " + std::to_string(need) + " bytes exceeds budget " +
                        std::to_string(opts.memory_budget));

    FockTruncation f;
    f.data_ = data;
    f.levels_ = N;
    f.dims_.assign(static_cast<std::size_t>(N) + 1, 0);
    f.dims_[0] = 1;
    f.dims_[1] = m;
    f.iota_.resize(N + 1);
    f.transfer_.resize(N);
    f.creation_.assign(m, std::vector<CMatrix>(N));
    f.iota_[1] = CMatrix::Identity(m, m);

    // Pmat(i, j) = a_ij
    const CMatrix Pmat = data.A;

    for (int n = 1; n < N; ++n) {
        const Index dp = f.dims_[n - 1], dn = f.dims_[n];
        const CMatrix& io = f.iota_[n];
        // C[a, (b, j)] = sum_i conj(a_ij) iota_n[(a, i), b]
        CMatrix C(dp, dn * m);
        for (Index a = 0; a < dp; ++a) {
            // rows (a, i) of iota_n form an m x dn block
            const CMatrix blk = io.middleRows(a * m, m);
            const CMatrix r = Pmat.adjoint() * blk; // (j, b)
            for (Index b = 0; b < dn; ++b)
                for (Index j = 0; j < m; ++j) C(a, b * m + j) = r(j, b);
        }
        f.iota_[n + 1] = kernel_basis(C, data.tol);
        f.dims_[n + 1] = f.iota_[n + 1].cols();
    }

    f.transfer_[0] = CMatrix::Identity(m, m);
    for (int n = 1; n < N; ++n) {
        const Index dp = f.dims_[n - 1], dn = f.dims_[n];
        const CMatrix& io = f.iota_[n];
        const CMatrix& Mp = f.transfer_[n - 1];
        CMatrix Mn(dn * m, m * dn);
        CMatrix T(dp * m, m * dn);
        for (Index k = 0; k < m; ++k) {
            const CMatrix ik = strided_rows(io, k, m);
            for (Index i = 0; i < m; ++i)
                T.middleCols(i * dn, dn).noalias() = Mp.middleCols(i * dp, dp) * ik;
            Eigen::Map<CMatrix, 0, Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>> rows(
                Mn.data() + k, dn, m * dn,
                Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>(Mn.rows(), m));
            rows.noalias() = io.adjoint() * T;
        }
        f.transfer_[n] = std::move(Mn);
    }

    for (int n = 0; n < N; ++n) {
        const Index dn = f.dims_[n];
        const CMatrix all = f.iota_[n + 1].adjoint() * f.transfer_[n];
        for (int i = 0; i < m; ++i) f.creation_[i][n] = all.middleCols(i * dn, dn);
    }
    return f;
}

CMatrix jw_dense(const TLData& data, int n, Index dense_limit) {
    const int m = data.m;
    if (n < 0) throw Error(ErrorCode::LevelOutOfRange, "negative level");
    double size = std::pow(static_cast<double>(m), n);
    if (size > static_cast<double>(dense_limit))
        throw Error(ErrorCode::BudgetExceeded, "dense tensor power exceeds the dense budget");
    if (n == 0) return CMatrix::Identity(1, 1);
    CMatrix f = CMatrix::Identity(m, m);
    Index outer = 1; // m^{k-1}
    for (int k = 1; k < n; ++k) {
        const CMatrix F = kron(f, CMatrix::Identity(m, m));
        const CMatrix Y = apply_kron(CMatrix::Identity(outer, outer), data.e, F);
        const double c = qint(2, data.q) * phi(k, data.q);
        f = F - c * (F * Y);
        outer *= m;
    }
    return f;
}

CMatrix embed_dense(const FockTruncation& fock, int n, Index dense_limit) {
    const int m = fock.m();
    if (n < 0 || n > fock.levels()) throw Error(ErrorCode::LevelOutOfRange, "level out of range");
    if (std::pow(static_cast<double>(m), n) > static_cast<double>(dense_limit))
        throw Error(ErrorCode::BudgetExceeded, "dense tensor power exceeds the dense budget");
    CMatrix E = CMatrix::Identity(1, 1);
    for (int k = 1; k <= n; ++k) E = apply_kron(E, CMatrix::Identity(m, m), fock.iota(k));
    return E;
}

BlockOperator gauge(const FockTruncation& fock) {
    const TLData& d = fock.data();
    if (!d.is_antidiagonal())
        throw Error(ErrorCode::RequiresAntidiagonal, "gauge action needs antidiagonal A");
    const CMatrix u = -(d.A * d.A.conjugate());
    std::vector<CMatrix> blocks;
    blocks.push_back(CMatrix::Identity(1, 1));
    for (int n = 1; n <= fock.levels(); ++n) {
        const CMatrix& io = fock.iota(n);
        blocks.push_back(io.adjoint() * apply_kron(blocks.back(), u, io));
    }
    return BlockOperator(0, fock.dims(), std::move(blocks));
}

} // namespace tlsub
