#include "kerrpcw/config.hpp"

#include <fstream>
#include <sstream>

#include "text_util.hpp"

namespace kerrpcw {

using detail::trim;

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  Config cfg = parse(in, path.string());
  cfg.base_dir_ = path.has_parent_path() ? path.parent_path() : ".";
  return cfg;
}

Config Config::parse(std::istream& in, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  cfg.base_dir_ = ".";

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip trailing comment (a '#' not inside the value of interest; values
    // here never legitimately contain '#')
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;

    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value', got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    const auto [it, inserted] = cfg.entries_.try_emplace(key, Entry{value, lineno});
    if (!inserted) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                        "' (first set at line " + std::to_string(it->second.line) + ")");
    }
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return entries_.count(key) != 0; }

const Config::Entry& Config::require(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError(origin_ + ": missing required key '" + key + "'");
  }
  return it->second;
}

std::string Config::describe(const std::string& key, const Entry& e) const {
  return origin_ + ":" + std::to_string(e.line) + ": key '" + key + "'";
}

double Config::get_double(const std::string& key) const {
  const Entry& e = require(key);
  double v = 0.0;
  if (!detail::try_parse_double(e.value, &v)) {
    throw ConfigError(describe(key, e) + " is not a number: '" + e.value + "'");
  }
  return v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
  const Entry& e = require(key);
  double v = 0.0;
  if (!detail::try_parse_double(e.value, &v) ||
      v != static_cast<double>(static_cast<long long>(v))) {
    throw ConfigError(describe(key, e) + " is not an integer: '" + e.value + "'");
  }
  return static_cast<long long>(v);
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = entries_.at(key);
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  throw ConfigError(describe(key, e) + " is not a boolean (use true/false): '" + e.value +
                    "'");
}

std::string Config::get_string(const std::string& key) const { return require(key).value; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return has(key) ? entries_.at(key).value : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  const Entry& e = require(key);
  std::vector<double> out;
  for (const std::string& field : detail::split(e.value, ',')) {
    double v = 0.0;
    if (!detail::try_parse_double(field, &v)) {
      throw ConfigError(describe(key, e) + " has a non-numeric element: '" + trim(field) +
                        "'");
    }
    out.push_back(v);
  }
  return out;
}

std::filesystem::path Config::resolve_path(const std::string& key) const {
  const std::filesystem::path p(get_string(key));
  if (p.is_absolute()) return p;
  return base_dir_ / p;
}

void Config::set(const std::string& key, const std::string& value) {
  entries_[key] = Entry{value, 0};
}

void Config::set(const std::string& key, double value) {
  std::ostringstream ss;
  ss.precision(17);
  ss << value;
  set(key, ss.str());
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) {
    if (k.rfind(prefix, 0) == 0) out.push_back(k);
  }
  return out;
}

}  // namespace kerrpcw
