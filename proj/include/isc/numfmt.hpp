#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace isc {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// Strict full-token parse; nullopt on trailing garbage or non-finite values.
std::optional<double> parse_double(std::string_view token);
std::optional<long> parse_integer(std::string_view token);

}  // namespace isc
