#pragma once

#include <string>

namespace allroots {

/// 17 significant digits, enough to round-trip any double bitwise.
/// Non-finite values are written as nan, inf, -inf.
std::string format_double(double value);

/// Shortest text that round-trips, for labels and human-readable messages.
std::string format_short(double value);

/// Inverse of format_double; throws std::invalid_argument on malformed text.
double parse_double(const std::string& text);

}  // namespace allroots
