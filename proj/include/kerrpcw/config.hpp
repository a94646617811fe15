#ifndef KERRPCW_CONFIG_HPP
#define KERRPCW_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kerrpcw {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value file: one entry per line, '#' comments, no sections or
// expressions. Keys are dotted paths with unit suffixes spelled out
// (e.g. pcw.length_um = 100). Lookups throw ConfigError naming the key and,
// for malformed values, the file and line it came from.
class Config {
 public:
  static Config load(const std::filesystem::path& path);
  static Config parse(std::istream& in, const std::string& origin = "<stream>");

  bool has(const std::string& key) const;

  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  // Comma-separated list of numbers.
  std::vector<double> get_double_list(const std::string& key) const;

  // Paths in configs resolve relative to the config file's directory.
  std::filesystem::path resolve_path(const std::string& key) const;

  // Overrides one entry (used by the sweep driver); the key need not exist.
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);

  const std::string& origin() const { return origin_; }
  bool empty() const { return entries_.empty(); }
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };

  const Entry& require(const std::string& key) const;
  std::string describe(const std::string& key, const Entry& e) const;

  std::string origin_;
  std::filesystem::path base_dir_;
  std::map<std::string, Entry> entries_;
};

}  // namespace kerrpcw

#endif  // KERRPCW_CONFIG_HPP
