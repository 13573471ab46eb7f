#pragma once

#include <stdexcept>
#include <string>

namespace isc {

enum class ErrorCategory { parse, physics, solver, io };

enum class ErrorCode {
    syntax,
    unknown_keyword,
    missing_section,
    dimension_mismatch,
    non_physical_value,
    stoichiometry_imbalance,
    degenerate_temperature,
    missing_critical_props,
    no_real_root,
    pore_space_exhausted,
    singular_cell_block,
    breakdown,
    max_iterations,
    diverged_residual,
    simulation_stalled,
    sink_failure,
};

const char* to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

// Process exit status for each category: parse=2, physics=3, solver=4, io=5.
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, int line = 0);

    ErrorCode code() const { return code_; }
    ErrorCategory category() const { return category_of(code_); }
    // 1-based deck line for parse errors, 0 when not applicable
    int line() const { return line_; }

private:
    ErrorCode code_;
    int line_;
};

}  // namespace isc
