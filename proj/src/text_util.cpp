#include "text_util.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace kerrpcw::detail {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool try_parse_double(const std::string& field, double* out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  double v = 0.0;
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace kerrpcw::detail
