#include "tlsub/block_operator.hpp"

#include <algorithm>

#include "tlsub/error.hpp"

namespace tlsub {

BlockOperator::BlockOperator(int degree, std::vector<Index> dims, std::vector<CMatrix> blocks)
    : degree_(degree), dims_(std::move(dims)), blocks_(std::move(blocks)) {
    const int expected = std::max(0, last_source() - first_source() + 1);
    if (static_cast<int>(blocks_.size()) != expected)
        throw Error(ErrorCode::InvalidArgument, "block count does not match degree");
    for (int n = first_source(); n <= last_source(); ++n) {
        const CMatrix& b = blocks_[n - first_source()];
        if (b.rows() != dims_[n + degree_] || b.cols() != dims_[n])
            throw Error(ErrorCode::InvalidArgument, "block shape does not match level dims");
    }
}

int BlockOperator::first_source() const { return std::max(0, -degree_); }
int BlockOperator::last_source() const { return std::min(levels(), levels() - degree_); }

const CMatrix& BlockOperator::block(int n) const {
    if (!has_block(n)) throw Error(ErrorCode::LevelOutOfRange, "no block at this level");
    return blocks_[n - first_source()];
}

BlockOperator BlockOperator::adjoint() const {
    BlockOperator r;
    r.degree_ = -degree_;
    r.dims_ = dims_;
    for (int n = r.first_source(); n <= r.last_source(); ++n)
        r.blocks_.push_back(block(n - degree_).adjoint());
    return r;
}

double BlockOperator::norm() const {
    double best = 0.0;
    for (const auto& b : blocks_) best = std::max(best, spectral_norm(b));
    return best;
}

// Blocks whose intermediate level lies outside the truncation are zero.
BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
    if (a.dims_ != b.dims_) throw Error(ErrorCode::InvalidArgument, "graded spaces differ");
    BlockOperator r;
    r.degree_ = a.degree_ + b.degree_;
    r.dims_ = a.dims_;
    for (int n = r.first_source(); n <= r.last_source(); ++n) {
        if (b.has_block(n) && a.has_block(n + b.degree_))
            r.blocks_.push_back(a.block(n + b.degree_) * b.block(n));
        else
            r.blocks_.push_back(CMatrix::Zero(r.dims_[n + r.degree_], r.dims_[n]));
    }
    return r;
}

BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
    if (a.dims_ != b.dims_ || a.degree_ != b.degree_)
        throw Error(ErrorCode::InvalidArgument, "cannot add operators of different degree");
    BlockOperator r = a;
    for (std::size_t k = 0; k < r.blocks_.size(); ++k) r.blocks_[k] += b.blocks_[k];
    return r;
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
    return a + Complex(-1.0) * b;
}

BlockOperator operator*(Complex s, const BlockOperator& a) {
    BlockOperator r = a;
    for (auto& blk : r.blocks_) blk *= s;
    return r;
}

} // namespace tlsub
