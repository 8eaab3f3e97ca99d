#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tlsub/fock.hpp"

namespace tlsub {

inline constexpr double kCheckTolerance = 1e-9;

struct RelationReport {
    std::string name;
    std::vector<std::pair<int, double>> per_level; // (level, residual)
    double tolerance = kCheckTolerance;
    bool pass = false;
    std::string note;

    double max_residual() const;
};

RelationReport check_vacuum(const FockTruncation& fock, double tolerance = kCheckTolerance);
RelationReport check_quadratic(const FockTruncation& fock, double tolerance = kCheckTolerance);
RelationReport check_mixed(const FockTruncation& fock, double tolerance = kCheckTolerance);
RelationReport check_gauge(const FockTruncation& fock, double tolerance = kCheckTolerance);
RelationReport check_iota(const FockTruncation& fock, double tolerance = kCheckTolerance);

struct CPDefectProfile {
    RelationReport report;          // per level: max of both Gram defects
    std::vector<double> row_defect; // ||M M* - I||
    std::vector<double> column_defect;
    std::vector<double> bound;      // max|a_i|^2 q^{n+1} / [n+1]_q
    std::vector<double> closed_form; // q^{n+2} / [n+1]_q
};

// Defect of the 2x1 block row built from the conjugate-pair annihilators
// and the creators, on level n of the total grading.
CPDefectProfile cp_defect_profile(const FockTruncation& fock, double tolerance = kCheckTolerance);

std::vector<RelationReport> verify_all(const FockTruncation& fock,
                                       double tolerance = kCheckTolerance);

} // namespace tlsub
