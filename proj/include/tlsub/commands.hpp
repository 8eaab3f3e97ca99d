#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlsub/fock.hpp"
#include "tlsub/report.hpp"

namespace tlsub {

struct RunConfig {
    std::string input_path;
    std::string preset;
    int levels = 6;
    double tol = kDefaultTol;
    int window_k0 = 4;
    int window_L = 6;
    int ell_max = 2;
    int trunc_K = 60;
    std::string format = "json";
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    std::string cache_path;  // optional Fock cache
    int corrupt_iota = 0;    // test hook: level whose iota gets perturbed
};

struct CommandResult {
    Json report;
    int exit_code = 0;
};

void validate_config(const RunConfig& cfg);

// {"entries": [[{"re":..,"im":..}, ..], ..]} or {"antidiagonal": [..]}
CMatrix parse_matrix_json(const std::string& text);
CMatrix preset_matrix(const std::string& name);
std::vector<std::string> preset_names();
CMatrix load_input(const RunConfig& cfg);

FockTruncation build_or_load(const TLData& data, const RunConfig& cfg);

CommandResult cmd_analyze(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_fusion(const RunConfig& cfg, RepLabel a, RepLabel b);
CommandResult cmd_ktheory(const RunConfig& cfg);
CommandResult cmd_uq2(const RunConfig& cfg);

} // namespace tlsub
