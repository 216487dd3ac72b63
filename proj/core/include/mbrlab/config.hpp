#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace mbrlab {

// Flat key-value configuration: one `section.key = value` per line, `#`
// comments, later assignments win. Values are strings until a typed getter
// asks for them.
class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in);
  static Config parse_file(const std::string& path);

  // `key=value` command-line override; malformed input throws.
  void set_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::vector<std::string> keys() const;

  std::string get_string(const std::string& key) const;
  std::string get_string_or(const std::string& key,
                            const std::string& fallback) const;
  long get_long(const std::string& key) const;
  long get_long_or(const std::string& key, long fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  std::vector<long> get_long_list(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  // Rejects keys outside the allowed set (catches typos in overrides).
  void require_known_keys(const std::vector<std::string>& allowed) const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace mbrlab
