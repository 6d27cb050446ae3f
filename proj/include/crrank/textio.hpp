#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace crrank {

// Small helpers shared by the line-oriented readers and the CSV/JSON writers.

/// Splits a record line on ','. '\r' is dropped so CRLF input parses cleanly.
std::vector<std::string> split_fields(const std::string& line);

std::int64_t parse_int(const std::string& s, const std::string& context);
double parse_double(const std::string& s, const std::string& context);

/// Shortest round-trip decimal form of a double (std::to_chars), so that
/// serialized scores re-read bit-identically and reruns emit identical bytes.
std::string format_double(double value);

}  // namespace crrank
