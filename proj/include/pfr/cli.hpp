#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "pfr/common.hpp"

namespace pfr {

// One parsed command invocation.  Exit codes: 0 success, 2 parse error,
// 3 numerical failure, 4 verification fail.
struct AnalysisRequest {
    enum class Command { analyze, roots, verify, power_index };
    enum class Format { text, structured };

    Command command = Command::analyze;
    std::string matrix_path;          // A (or X for verify, with a_path below)
    std::string second_path;          // A for verify
    std::string factorization_path;   // optional explicit (R, J) file
    int p = 0;
    std::optional<double> tol_value;  // --tol; PERRON_ROOTS_TOL applies when unset
    int cap = 0;                      // 0 = default power cap
    std::uint64_t seed = 1;
    bool nonprimary = false;
    bool stochastic = false;
    Format format = Format::text;
};

int run(const AnalysisRequest& req, std::ostream& out, std::ostream& err);

}  // namespace pfr
