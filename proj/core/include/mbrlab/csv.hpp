#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mbrlab {

// Round-trip formatting: shortest form is not needed, exactness is.
std::string format_double(double v);

std::string trim(const std::string& s);
std::vector<std::string> split_csv(const std::string& line);
std::vector<std::string> split(const std::string& s, char sep);

// Parsers that reject trailing garbage and report the offending line.
double parse_double(const std::string& field, std::size_t line_no = 0);
long parse_long(const std::string& field, std::size_t line_no = 0);

// Optional cell: empty string denotes a missing value.
std::string format_optional(const std::optional<double>& v);
std::optional<double> parse_optional(const std::string& field,
                                     std::size_t line_no = 0);

}  // namespace mbrlab
