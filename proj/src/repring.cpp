#include "tlsub/repring.hpp"

#include <algorithm>

#include "tlsub/error.hpp"
#include "tlsub/param.hpp"

namespace tlsub {

namespace {

void require_label(RepLabel a) {
    if (a.k < 0) throw Error(ErrorCode::InvalidArgument, "label needs k >= 0");
}

} // namespace

LabelMultiset fuse(RepLabel a, RepLabel b) {
    require_label(a);
    require_label(b);
    LabelMultiset out;
    for (int j = 0; j <= std::min(a.k, b.k); ++j) out[{a.k + b.k - 2 * j, a.l + b.l + j}] += 1;
    return out;
}

LabelMultiset fuse(const LabelMultiset& a, const LabelMultiset& b) {
    LabelMultiset out;
    for (const auto& [x, mx] : a)
        for (const auto& [y, my] : b)
            for (const auto& [z, mz] : fuse(x, y)) out[z] += mx * my * mz;
    return out;
}

RepLabel dual(RepLabel a) {
    require_label(a);
    return {a.k, -a.l - a.k};
}

WeightMultiset weights(RepLabel a) {
    require_label(a);
    WeightMultiset out;
    for (int s = 0; s <= a.k; ++s) out[a.l + s] += 1;
    return out;
}

std::map<int, int> rho_star(RepLabel a) {
    require_label(a);
    std::map<int, int> out;
    for (int s = 0; s <= a.k; ++s) out[-a.l - s] += 1;
    return out;
}

int up_multiplicity(int k, int l, int m, int n) {
    if (k < 0 || m < 0) throw Error(ErrorCode::InvalidArgument, "need k, m >= 0");
    const int t = m + n;
    return (t >= l && t <= l + std::min(m, k)) ? 1 : 0;
}

int chain_class(RepLabel a) {
    require_label(a);
    return a.k + 2 * a.l;
}

std::pair<int, double> dims(RepLabel a, double q) {
    require_label(a);
    return {a.k + 1, qint(a.k + 1, q)};
}

} // namespace tlsub
