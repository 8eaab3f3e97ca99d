#pragma once

#include <vector>

#include "tlsub/linalg.hpp"

namespace tlsub {

// Homogeneous operator of a fixed degree on a truncated graded space.
// block(n) maps level n to level n + degree.
class BlockOperator {
public:
    BlockOperator() = default;
    BlockOperator(int degree, std::vector<Index> dims, std::vector<CMatrix> blocks);

    int degree() const { return degree_; }
    int levels() const { return static_cast<int>(dims_.size()) - 1; }
    const std::vector<Index>& dims() const { return dims_; }
    int first_source() const;
    int last_source() const;
    bool has_block(int n) const { return n >= first_source() && n <= last_source(); }
    const CMatrix& block(int n) const;

    BlockOperator adjoint() const;
    double norm() const;

    friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);
    friend BlockOperator operator*(Complex s, const BlockOperator& a);

private:
    int degree_ = 0;
    std::vector<Index> dims_;
    std::vector<CMatrix> blocks_; // blocks_[n - first_source()]
};

} // namespace tlsub
