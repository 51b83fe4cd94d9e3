#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace polyent {

/// Shortest decimal that round-trips to the same double.
inline std::string format_real(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

}  // namespace polyent
