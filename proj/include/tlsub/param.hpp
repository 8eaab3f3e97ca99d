#pragma once

#include <optional>

#include "tlsub/error.hpp"
#include "tlsub/linalg.hpp"

namespace tlsub {

struct TLReport {
    bool is_tl = false;
    double scale = 0.0;              // A / scale has A*conj(A) unitary
    double unitarity_residual = 0.0; // ||B B* - I|| for the rescaled product
    double lambda = 0.0;
    double lambda_residual = 0.0;    // distance of the fitted TL relation
    double min_singular_value = 0.0;
};

struct TLData {
    int m = 0;
    CMatrix A;                           // normalized
    std::optional<CVector> antidiagonal; // a_i when A is antidiagonal
    CVector P;                           // P(i*m + j) = A(i, j)
    CVector v;                           // P / ||P||
    CMatrix e;                           // v v*
    double q = 1.0;
    double trace = 2.0;                  // Tr(A* A) = q + 1/q
    double tol = kDefaultTol;
    TLReport report;

    bool is_antidiagonal() const { return antidiagonal.has_value(); }
    double lambda() const { return trace * trace; }
};

struct Canonical {
    CMatrix w;   // unitary, w A w^T antidiagonal
    CVector a;
    double residual = 0.0;
};

TLReport validate(const CMatrix& A, double tol = kDefaultTol);
TLData normalize(const CMatrix& A, double tol = kDefaultTol);
Canonical canonicalize(const CMatrix& A, double tol = kDefaultTol);

CMatrix antidiagonal_matrix(const CVector& a);

// q in (0, 1] with q + 1/q = t.
double q_from_trace(double t, double tol = kDefaultTol);
// [n]_q, equal to n at q = 1.
double qint(int n, double q);
// [n]_q / [n+1]_q
double phi(int n, double q);

} // namespace tlsub
