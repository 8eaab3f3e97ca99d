#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tlsub/linalg.hpp"
#include "tlsub/repring.hpp"

namespace tlsub {

// Generators of C[SU_q(2)] on span{e_0 .. e_K}:
// alpha e_k = sqrt(1 - q^{2k}) e_{k-1}, gamma e_k = q^k e_k.
struct SURep {
    double q = 0.5;
    int K = 0;
    CMatrix alpha;
    CMatrix gamma;
    std::vector<std::pair<std::string, double>> residuals; // on interior indices
};

SURep build_su_rep(double q, int K);

// Finitely supported map from x-degree to matrices; x is central and unitary.
class GradedElement {
public:
    GradedElement() = default;
    explicit GradedElement(Index dim) : dim_(dim) {}
    static GradedElement homogeneous(int degree, CMatrix m);
    static GradedElement unit(Index dim);

    Index dim() const { return dim_; }
    const std::map<int, CMatrix>& terms() const { return terms_; }
    void add(int degree, const CMatrix& m);
    // degrees carrying a matrix of Frobenius norm above eps
    std::vector<int> support(double eps = 0.0) const;
    double mass_outside(int degree) const;

    GradedElement adjoint() const;
    // x -> 1
    CMatrix project() const;

    friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
    friend GradedElement operator+(const GradedElement& a, const GradedElement& b);
    friend GradedElement operator*(Complex s, const GradedElement& a);

private:
    Index dim_ = 0;
    std::map<int, CMatrix> terms_;
};

using GradedMatrix = std::vector<std::vector<GradedElement>>;

// [[alpha x*, -q gamma*], [gamma x*, alpha*]]
GradedMatrix defining_v(const SURep& rep);
CMatrix project(const GradedMatrix& v);

// Orthonormal basis of the range of f_n on (C^2)^{(x)n}, one weight vector per
// weight, ordered by descending weight (number of first minus second factors).
CMatrix weight_basis(const CMatrix& jw, int n);
// f_{2l} for m = 2 and a = (q^{-1/2}, -q^{1/2})
CMatrix uq2_jones_wenzl(double q, int n);

inline constexpr int kMaxSpinWord = 4;

// V_l from V^{(x)2l}, rows and columns xi_l .. xi_{-l}.
GradedMatrix spin_coeffs(const SURep& rep, int two_l, const CMatrix& jw);
GradedMatrix spin_coeffs(const SURep& rep, int two_l);

struct XDegreeReport {
    int two_l = 0;
    bool pass = false;
    std::vector<std::vector<int>> degrees; // observed dominant degree per entry
    std::vector<int> expected;             // -(l + j) per column
    double off_degree_mass = 0.0;
    WeightMultiset column_weights;         // l + j read from the degrees
};
XDegreeReport xdegree_check(const SURep& rep, int two_l);

struct TorusReport {
    int two_l = 0;
    bool pass = false;
    double residual = 0.0;
    int samples = 0;
};
TorusReport torus_weight_check(const SURep& rep, int two_l);

// ||X*X - I|| and ||XX* - I|| on columns whose index stays below K over the
// given word reach.
double interior_unitarity(const CMatrix& x, int blocks, int K, int reach);
double spin_unitarity(const SURep& rep, int two_l);

} // namespace tlsub
