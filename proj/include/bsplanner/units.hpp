#pragma once

// Unit convention, fixed project-wide: rates in bits/second, sizes in bits,
// time in seconds. Decimal SI prefixes: 1 Mbps = 1e6 bits/s, 1 MB = 8e6 bits,
// 1 KB = 8e3 bits, 1 ms = 1e-3 s.

#include <cctype>
#include <string>
#include <string_view>

#include "bsplanner/errors.hpp"

namespace bsplanner::units {

constexpr double mbps(double x) { return x * 1e6; }
constexpr double kbps(double x) { return x * 1e3; }
constexpr double megabytes(double x) { return x * 8e6; }
constexpr double kilobytes(double x) { return x * 8e3; }
constexpr double bytes(double x) { return x * 8.0; }
constexpr double milliseconds(double x) { return x * 1e-3; }

namespace detail {

struct split_result {
    double value;
    std::string suffix;
};

inline split_result split_number_suffix(std::string_view text) {
    std::string s{text};
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw invalid_parameter("cannot parse numeric value from '" + s + "'");
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return {value, s.substr(pos)};
}

}  // namespace detail

// "2Mbps", "800kbps", "250000" -> bits/second.
inline double parse_rate(std::string_view text) {
    auto [value, suffix] = detail::split_number_suffix(text);
    if (suffix.empty() || suffix == "bps") return value;
    if (suffix == "Mbps") return mbps(value);
    if (suffix == "kbps" || suffix == "Kbps") return kbps(value);
    throw invalid_parameter("unknown rate suffix '" + suffix + "' (expected Mbps, kbps, or bps)");
}

// "3.2MB", "8KB", "1000B", "8000" -> bits.
inline double parse_size(std::string_view text) {
    auto [value, suffix] = detail::split_number_suffix(text);
    if (suffix.empty() || suffix == "b" || suffix == "bits") return value;
    if (suffix == "MB") return megabytes(value);
    if (suffix == "KB" || suffix == "kB") return kilobytes(value);
    if (suffix == "B") return bytes(value);
    throw invalid_parameter("unknown size suffix '" + suffix + "' (expected MB, KB, B, or bits)");
}

// "100ms", "0.1s", "1000" -> seconds.
inline double parse_time(std::string_view text) {
    auto [value, suffix] = detail::split_number_suffix(text);
    if (suffix.empty() || suffix == "s") return value;
    if (suffix == "ms") return milliseconds(value);
    throw invalid_parameter("unknown time suffix '" + suffix + "' (expected ms or s)");
}

}  // namespace bsplanner::units
