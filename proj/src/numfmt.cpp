#include "isc/numfmt.hpp"

#include <charconv>
#include <cmath>

namespace isc {

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view token)
{
    if (token.empty()) return std::nullopt;
    // from_chars rejects a leading '+', accept it for hand-written decks
    if (token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<long> parse_integer(std::string_view token)
{
    if (token.empty()) return std::nullopt;
    if (token.front() == '+') token.remove_prefix(1);
    long v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) return std::nullopt;
    return v;
}

}  // namespace isc
