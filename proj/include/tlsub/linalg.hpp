#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace tlsub {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-10;

// Above these sizes spectral norms are estimated with Lanczos instead of a
// full decomposition. Operators given only by their action are materialized
// up to the larger limit.
inline constexpr Index kExactNormLimit = 1024;
inline constexpr Index kExactDenseLimit = 320;

// Applies a linear map to a block of column vectors.
using LinearOp = std::function<CMatrix(const CMatrix&)>;

double spectral_norm(const CMatrix& x);
double hermitian_norm(const CMatrix& h);

// Spectral norm of an operator known only through its action.
// Small operators are materialized; large ones go through Lanczos on X*X,
// which converges to the norm from below.
double operator_norm(const LinearOp& apply, const LinearOp& apply_adjoint,
                     Index rows, Index cols);
double hermitian_operator_norm(const LinearOp& apply, Index dim);

// ||X*X - I|| and ||XX* - I|| without forming the Gram matrices when large.
double isometry_defect(const CMatrix& x);
double coisometry_defect(const CMatrix& x);

// Dense Kronecker product, first factor major: (a (x) b)(i*rb + k, j*cb + l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

// (a (x) b) x without forming the Kronecker product.
CMatrix apply_kron(const CMatrix& a, const CMatrix& b, const CMatrix& x);

// Rows r*slots + slot of x, r = 0 .. rows/slots - 1.
CMatrix strided_rows(const CMatrix& x, Index slot, Index slots);

// Multiplies each column by a phase so that its first entry of largest
// modulus is real and positive.
void fix_column_phases(CMatrix& basis);

// Singular values, descending.
Eigen::VectorXd singular_values(const CMatrix& x);

} // namespace tlsub
