#include "mbrlab/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

#include "mbrlab/common.hpp"

namespace mbrlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  return split(line, ',');
}

namespace {
[[noreturn]] void bad_field(const std::string& what, const std::string& field,
                            std::size_t line_no) {
  std::string msg = "invalid " + what + " '" + field + "'";
  if (line_no > 0) msg = "line " + std::to_string(line_no) + ": " + msg;
  throw InputError(msg);
}
}  // namespace

double parse_double(const std::string& field, std::size_t line_no) {
  const std::string t = trim(field);
  if (t.empty()) bad_field("number", field, line_no);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (errno != 0 || end != t.c_str() + t.size())
    bad_field("number", field, line_no);
  return v;
}

long parse_long(const std::string& field, std::size_t line_no) {
  const std::string t = trim(field);
  if (t.empty()) bad_field("integer", field, line_no);
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (errno != 0 || end != t.c_str() + t.size())
    bad_field("integer", field, line_no);
  return v;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::optional<double> parse_optional(const std::string& field,
                                     std::size_t line_no) {
  if (trim(field).empty()) return std::nullopt;
  return parse_double(field, line_no);
}

}  // namespace mbrlab
