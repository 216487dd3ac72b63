#include "mbrlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "mbrlab/common.hpp"
#include "mbrlab/csv.hpp"

namespace mbrlab {

Config Config::parse(std::istream& in) {
  Config config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    require(eq != std::string::npos,
            "config line " + std::to_string(line_no) +
                ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    require(!key.empty(), "config line " + std::to_string(line_no) +
                              ": empty key");
    config.values_[key] = value;
  }
  return config;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config file: " + path);
  return parse(in);
}

void Config::set_override(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  require(eq != std::string::npos,
          "override must have the form key=value: " + assignment);
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  require(!key.empty(), "override has an empty key: " + assignment);
  values_[key] = value;
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool Config::has(const std::string& key) const {
  return values_.count(key) > 0;
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

std::string Config::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), "missing config key: " + key);
  return it->second;
}

std::string Config::get_string_or(const std::string& key,
                                  const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

long Config::get_long(const std::string& key) const {
  try {
    return parse_long(get_string(key));
  } catch (const InputError& e) {
    throw InputError("config key " + key + ": " + e.what());
  }
}

long Config::get_long_or(const std::string& key, long fallback) const {
  return has(key) ? get_long(key) : fallback;
}

double Config::get_double(const std::string& key) const {
  try {
    return parse_double(get_string(key));
  } catch (const InputError& e) {
    throw InputError("config key " + key + ": " + e.what());
  }
}

double Config::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

bool Config::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw InputError("config key " + key + ": expected a boolean, got '" + v +
                   "'");
}

std::vector<long> Config::get_long_list(const std::string& key) const {
  std::vector<long> out;
  for (const auto& field : split(get_string(key), ',')) {
    try {
      out.push_back(parse_long(field));
    } catch (const InputError& e) {
      throw InputError("config key " + key + ": " + e.what());
    }
  }
  return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& field : split(get_string(key), ',')) {
    try {
      out.push_back(parse_double(field));
    } catch (const InputError& e) {
      throw InputError("config key " + key + ": " + e.what());
    }
  }
  return out;
}

void Config::require_known_keys(
    const std::vector<std::string>& allowed) const {
  for (const auto& [key, value] : values_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InputError("unknown config key: " + key);
  }
}

}  // namespace mbrlab
