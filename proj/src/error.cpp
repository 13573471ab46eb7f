#include "isc/error.hpp"

namespace isc {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::syntax: return "SyntaxError";
    case ErrorCode::unknown_keyword: return "UnknownKeyword";
    case ErrorCode::missing_section: return "MissingRequiredSection";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::non_physical_value: return "NonPhysicalValue";
    case ErrorCode::stoichiometry_imbalance: return "StoichiometryImbalance";
    case ErrorCode::degenerate_temperature: return "DegenerateTemperature";
    case ErrorCode::missing_critical_props: return "MissingCriticalProps";
    case ErrorCode::no_real_root: return "NoRealRoot";
    case ErrorCode::pore_space_exhausted: return "PoreSpaceExhausted";
    case ErrorCode::singular_cell_block: return "SingularCellBlock";
    case ErrorCode::breakdown: return "Breakdown";
    case ErrorCode::max_iterations: return "MaxIterations";
    case ErrorCode::diverged_residual: return "DivergedResidual";
    case ErrorCode::simulation_stalled: return "SimulationStalled";
    case ErrorCode::sink_failure: return "SinkFailure";
    }
    return "Error";
}

ErrorCategory category_of(ErrorCode code)
{
    switch (code) {
    case ErrorCode::syntax:
    case ErrorCode::unknown_keyword:
    case ErrorCode::missing_section:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::non_physical_value:
    case ErrorCode::stoichiometry_imbalance:
        return ErrorCategory::parse;
    case ErrorCode::degenerate_temperature:
    case ErrorCode::missing_critical_props:
    case ErrorCode::no_real_root:
    case ErrorCode::pore_space_exhausted:
        return ErrorCategory::physics;
    case ErrorCode::singular_cell_block:
    case ErrorCode::breakdown:
    case ErrorCode::max_iterations:
    case ErrorCode::diverged_residual:
    case ErrorCode::simulation_stalled:
        return ErrorCategory::solver;
    case ErrorCode::sink_failure:
        return ErrorCategory::io;
    }
    return ErrorCategory::solver;
}

int exit_code(ErrorCategory category)
{
    switch (category) {
    case ErrorCategory::parse: return 2;
    case ErrorCategory::physics: return 3;
    case ErrorCategory::solver: return 4;
    case ErrorCategory::io: return 5;
    }
    return 1;
}

static std::string format_message(ErrorCode code, const std::string& message, int line)
{
    std::string out = to_string(code);
    if (line > 0) out += " at line " + std::to_string(line);
    out += ": " + message;
    return out;
}

Error::Error(ErrorCode code, const std::string& message, int line)
    : std::runtime_error(format_message(code, message, line)), code_(code), line_(line)
{
}

}  // namespace isc
