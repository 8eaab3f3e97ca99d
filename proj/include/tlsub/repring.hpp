#pragma once

#include <compare>
#include <map>
#include <utility>

namespace tlsub {

// U_{k,l} = U_k (x) d^l
struct RepLabel {
    int k = 0;
    int l = 0;
    auto operator<=>(const RepLabel&) const = default;
};

using LabelMultiset = std::map<RepLabel, int>;
using WeightMultiset = std::map<int, int>;

LabelMultiset fuse(RepLabel a, RepLabel b);
LabelMultiset fuse(const LabelMultiset& a, const LabelMultiset& b);
RepLabel dual(RepLabel a);
WeightMultiset weights(RepLabel a);
// coefficients over the symbols q_s
std::map<int, int> rho_star(RepLabel a);
int up_multiplicity(int k, int l, int m, int n);
int chain_class(RepLabel a);
std::pair<int, double> dims(RepLabel a, double q);

} // namespace tlsub
