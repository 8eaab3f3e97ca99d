#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tlsub {

struct QuasiData;

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<long long>>;

struct KClass {
    std::map<std::pair<int, int>, long long> p_coeffs; // [p_{m,n}]
    std::map<int, long long> qt_coeffs;                // [q~_s]
    bool operator==(const KClass&) const = default;
};

KClass pi_star(int k, int l);

struct WindowSymbol {
    bool is_p = false;
    int m = 0; // p_{m,n}
    int n = 0;
    int s = 0; // q~_s
    bool operator==(const WindowSymbol&) const = default;
};

struct WindowMatrix {
    IntMatrix entries;                       // rows x cols
    std::vector<WindowSymbol> rows;
    std::vector<std::pair<int, int>> cols;   // (k, l) of pi_*(k, l)
    int row_window_size = 0;                 // all symbols allowed by the window
};

// Square block of pi_* columns inside the window; rows ordered so that the
// block is upper triangular with diagonal +-1.
WindowMatrix window_matrix(int k0, int L);

std::vector<BigInt> smith_normal_form(const IntMatrix& M);

struct AbelianGroup {
    int free_rank = 0;
    std::vector<long long> torsion;
    std::string str() const;
};

struct KGroups {
    AbelianGroup k0;
    AbelianGroup k1;
    int d = 0;                     // the map Z -> Z
    int d_analytic = 0;            // 2 - m
    std::optional<int> d_numeric;  // rank_plus - rank_minus
};

KGroups k_groups_O(int m, const QuasiData* qd = nullptr);

} // namespace tlsub
