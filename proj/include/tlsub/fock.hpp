#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlsub/block_operator.hpp"
#include "tlsub/param.hpp"

namespace tlsub {

inline constexpr std::uint64_t kDefaultMemoryBudget = 2ull << 30;
inline constexpr Index kDenseDimLimit = 1024;

struct BuildOptions {
    std::uint64_t memory_budget = kDefaultMemoryBudget;
};

// Truncated subproduct system H_0 .. H_N with orthonormal embeddings
// iota_n : H_n -> H_{n-1} (x) C^m and the creation operators S_i.
class FockTruncation {
public:
    const TLData& data() const { return data_; }
    int m() const { return data_.m; }
    int levels() const { return levels_; }
    const std::vector<Index>& dims() const { return dims_; }
    Index dim(int n) const;

    // n = 1 .. N; rows (a, k) -> a*m + k
    const CMatrix& iota(int n) const;
    // M_n : C^m (x) H_n -> H_n (x) C^m, n = 0 .. N-1; column (i, b) -> i*d_n + b
    const CMatrix& transfer(int n) const;
    // S_i[n] : H_n -> H_{n+1}, n = 0 .. N-1
    const CMatrix& creation(int i, int n) const;

    BlockOperator creation_operator(int i) const;
    BlockOperator annihilation_operator(int i) const { return creation_operator(i).adjoint(); }
    // f(n) on H_n
    BlockOperator level_function(const std::vector<double>& f) const;
    BlockOperator identity() const;
    BlockOperator vacuum_projection() const;

    // test hook: perturbs iota_n by eps in one entry
    void corrupt_iota(int n, double eps);

private:
    friend FockTruncation build(const TLData&, int, const BuildOptions&);
    friend FockTruncation load_cache(const std::string&, const TLData&, int);

    TLData data_;
    int levels_ = 0;
    std::vector<Index> dims_;
    std::vector<CMatrix> iota_;                  // index n, iota_[0] unused
    std::vector<CMatrix> transfer_;              // index n
    std::vector<std::vector<CMatrix>> creation_; // [i][n]
};

// d_{n+1} = m d_n - d_{n-1}
std::vector<Index> level_dims(int m, int N);
std::uint64_t estimate_memory(int m, int N);

FockTruncation build(const TLData& data, int N, const BuildOptions& opts = {});

// Dense projection f_n on (C^m)^{(x)n} by the Wenzl recursion.
CMatrix jw_dense(const TLData& data, int n, Index dense_limit = kDenseDimLimit);
// E_n : H_n -> (C^m)^{(x)n}, isometric onto the range of f_n.
CMatrix embed_dense(const FockTruncation& fock, int n, Index dense_limit = kDenseDimLimit);

// Z_n on H_n induced by u = -A conj(A); needs antidiagonal data.
BlockOperator gauge(const FockTruncation& fock);

std::uint64_t cache_key(const TLData& data, int N);
void save_cache(const FockTruncation& fock, const std::string& path);
FockTruncation load_cache(const std::string& path, const TLData& data, int N);

} // namespace tlsub
