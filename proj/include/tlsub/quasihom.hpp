#pragma once

#include <memory>
#include <vector>

#include "tlsub/relations.hpp"

namespace tlsub {

struct QuasiData {
    std::shared_ptr<const FockTruncation> fock;
    std::vector<CMatrix> w;   // w_n : H_n -> H_{n+1} (x) C^m, n = 0 .. N-2
    int kernel_dim = 0;
    RelationReport isometry;      // w_n* w_n = 1
    RelationReport complement;    // w_{n-1} w_{n-1}* + iota_{n+1} iota_{n+1}* = 1
    RelationReport orthogonality; // iota_{k+1}* w_{k-1} = 0
    RelationReport coisometry;    // [iota_{k+1} | w_{k-1}] is unitary

    // [iota_{k+1} | w_{k-1}] : H_{k+1} + H_{k-1} -> H_k (x) C^m, k = 0 .. N-1
    CMatrix theta_phi(int k) const;
};

CMatrix build_w(const FockTruncation& fock, int n);
QuasiData build_theta_phi(std::shared_ptr<const FockTruncation> fock,
                          double tolerance = kCheckTolerance);

struct OverlapResult {
    double scalar = 0.0;
    double expected = 0.0;
    double residual = 0.0; // ||X - scalar f_n||
};
OverlapResult overlap(const FockTruncation& fock, int n, Index dense_limit = kDenseDimLimit);

struct DefectNorm {
    double measured = 0.0;
    double closed_form = 0.0;
};
double defect_closed_form(int n, double q);
DefectNorm defect_norm(const FockTruncation& fock, int n, Index dense_limit = kDenseDimLimit);

struct QuasiBlockReport {
    RelationReport total; // ||phi_+(S_i) - phi_-(S_i)|| by total degree
    RelationReport theta; // exact part on the untwisted summand
    RelationReport phi_part;
    std::vector<double> envelope; // 2 * closed-form defect
};
QuasiBlockReport quasi_blocks(const QuasiData& qd, int i, double tolerance = kCheckTolerance);

// phi_+(1) - phi_-(1) against the vacuum projection (e_0, 0), by total degree
RelationReport unit_difference(const QuasiData& qd, double tolerance = kCheckTolerance);

struct IndexRanks {
    int rank_plus = 0;
    int rank_minus = 0;
    double gap = 0.0;
};
IndexRanks index_ranks(const QuasiData& qd, int n);

} // namespace tlsub
