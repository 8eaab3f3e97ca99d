#include "tlsub/ktheory.hpp"

#include <algorithm>
#include <cstdlib>

#include "tlsub/error.hpp"
#include "tlsub/quasihom.hpp"

namespace tlsub {

namespace {

struct Overflow {};

struct Checked {
    using T = long long;
    static T add(T a, T b) {
        T r;
        if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static T sub(T a, T b) {
        T r;
        if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static T mul(T a, T b) {
        T r;
        if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
        return r;
    }
    static T div(T a, T b) {
        if (b == -1) return neg(a);
        return a / b;
    }
    static T mod(T a, T b) { return b == -1 ? 0 : a % b; }
    static T neg(T a) { return sub(0, a); }
    static T abs(T a) { return a < 0 ? neg(a) : a; }
};

struct Big {
    using T = BigInt;
    static T add(const T& a, const T& b) { return a + b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T mul(const T& a, const T& b) { return a * b; }
    static T div(const T& a, const T& b) { return a / b; }
    static T mod(const T& a, const T& b) { return a % b; }
    static T neg(const T& a) { return -a; }
    static T abs(const T& a) { return a < 0 ? T(-a) : a; }
};

template <class Ops>
std::vector<typename Ops::T> snf(std::vector<std::vector<typename Ops::T>> a) {
    using T = typename Ops::T;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    const std::size_t r = std::min(rows, cols);
    for (std::size_t t = 0; t < r; ++t) {
        while (true) {
            // pivot: smallest nonzero modulus in the trailing block
            bool found = false;
            std::size_t pi = t, pj = t;
            T best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (!found || Ops::abs(a[i][j]) < best)) {
                        found = true;
                        best = Ops::abs(a[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (!found) {
                std::vector<T> d;
                for (std::size_t k = 0; k < r; ++k) d.push_back(a[k][k]);
                return d;
            }
            std::swap(a[t], a[pi]);
            for (auto& row : a) std::swap(row[t], row[pj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                const T f = Ops::div(a[i][t], a[t][t]);
                for (std::size_t j = t; j < cols; ++j) a[i][j] = Ops::sub(a[i][j], Ops::mul(f, a[t][j]));
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                const T f = Ops::div(a[t][j], a[t][t]);
                for (std::size_t i = t; i < rows; ++i) a[i][j] = Ops::sub(a[i][j], Ops::mul(f, a[i][t]));
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility of the trailing block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (Ops::mod(a[i][j], a[t][t]) != 0) {
                        for (std::size_t c = t; c < cols; ++c) a[t][c] = Ops::add(a[t][c], a[i][c]);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0)
            for (std::size_t j = t; j < cols; ++j) a[t][j] = Ops::neg(a[t][j]);
    }
    std::vector<T> d;
    for (std::size_t k = 0; k < r; ++k) d.push_back(a[k][k]);
    return d;
}

AbelianGroup cokernel(const std::vector<BigInt>& diag, std::size_t target_rank) {
    AbelianGroup g;
    g.free_rank = static_cast<int>(target_rank);
    for (const auto& v : diag) {
        if (v == 0) continue;
        --g.free_rank;
        if (v != 1) g.torsion.push_back(static_cast<long long>(v));
    }
    return g;
}

} // namespace

KClass pi_star(int k, int l) {
    if (k < 0) throw Error(ErrorCode::InvalidArgument, "pi_star needs k >= 0");
    KClass c;
    for (int m = 0; m <= k - 1; ++m)
        for (int n = l + 1; n <= l + k - m; ++n) c.p_coeffs[{m, n}] -= 1;
    for (int s = -l - k; s <= -l; ++s) c.qt_coeffs[s] += 1;
    return c;
}

WindowMatrix window_matrix(int k0, int L) {
    if (k0 < 0) throw Error(ErrorCode::InvalidArgument, "window needs k0 >= 0");
    const int W = L - k0;
    if (W < 0) throw Error(ErrorCode::WindowTooSmall, "window needs L >= k0");
    WindowMatrix out;
    out.row_window_size = k0 * (2 * W + 1) + (2 * W + 1);

    for (int s = W; s >= -W; --s) out.rows.push_back({false, 0, 0, s});
    for (int m = 0; m < k0 && m + 1 <= W; ++m)
        for (int n = -W + m + 2; n <= W - m; ++n) out.rows.push_back({true, m, n, 0});

    for (int k = 0; k <= k0 && k <= W; ++k)
        for (int l = -(W - k); l <= W - k; ++l) out.cols.emplace_back(k, l);

    auto row_of = [&](const WindowSymbol& s) -> long {
        for (std::size_t r = 0; r < out.rows.size(); ++r)
            if (out.rows[r] == s) return static_cast<long>(r);
        return -1;
    };
    const std::size_t nr = out.rows.size(), nc = out.cols.size();
    if (nr != nc) throw Error(ErrorCode::WindowTooSmall, "window block is not square");
    out.entries.assign(nr, std::vector<long long>(nc, 0));
    for (std::size_t c = 0; c < nc; ++c) {
        const KClass v = pi_star(out.cols[c].first, out.cols[c].second);
        for (const auto& [mn, coeff] : v.p_coeffs) {
            if (coeff == 0) continue;
            const long r = row_of({true, mn.first, mn.second, 0});
            if (r < 0) throw Error(ErrorCode::WindowTooSmall, "support escapes the window");
            out.entries[r][c] += coeff;
        }
        for (const auto& [s, coeff] : v.qt_coeffs) {
            if (coeff == 0) continue;
            const long r = row_of({false, 0, 0, s});
            if (r < 0) throw Error(ErrorCode::WindowTooSmall, "support escapes the window");
            out.entries[r][c] += coeff;
        }
    }
    return out;
}

std::vector<BigInt> smith_normal_form(const IntMatrix& M) {
    for (const auto& row : M)
        if (!M.empty() && row.size() != M[0].size())
            throw Error(ErrorCode::InvalidArgument, "ragged integer matrix");
    try {
        const auto d = snf<Checked>(M);
        return {d.begin(), d.end()};
    } catch (const Overflow&) {
        std::vector<std::vector<BigInt>> big;
        for (const auto& row : M) big.emplace_back(row.begin(), row.end());
        return snf<Big>(std::move(big));
    }
}

std::string AbelianGroup::str() const {
    std::string out;
    auto append = [&](const std::string& s) { out += out.empty() ? s : " + " + s; };
    if (free_rank == 1) append("Z");
    else if (free_rank > 1) append("Z^" + std::to_string(free_rank));
    for (long long t : torsion) append("Z/" + std::to_string(t));
    return out.empty() ? "0" : out;
}

KGroups k_groups_O(int m, const QuasiData* qd) {
    if (m < 2) throw Error(ErrorCode::InvalidArgument, "need m >= 2");
    KGroups g;
    g.d_analytic = 2 - m;
    g.d = g.d_analytic;
    if (qd != nullptr) {
        if (qd->fock->m() != m)
            throw Error(ErrorCode::InvalidArgument, "Fock instance has a different m");
        const IndexRanks r = index_ranks(*qd, 1);
        g.d_numeric = r.rank_plus - r.rank_minus;
        g.d = *g.d_numeric;
    }
    // K_0(T_P) = Z, so the six-term sequence reduces to d : Z -> Z
    const auto diag = smith_normal_form({{g.d}});
    g.k0 = cokernel(diag, 1);
    g.k1.free_rank = diag[0] == 0 ? 1 : 0;
    return g;
}

} // namespace tlsub
