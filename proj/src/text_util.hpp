#ifndef KERRPCW_SRC_TEXT_UTIL_HPP
#define KERRPCW_SRC_TEXT_UTIL_HPP

#include <string>
#include <vector>

// Shared helpers for the line-oriented text formats (band files, mode files,
// config files). Internal to the library sources.
namespace kerrpcw::detail {

std::string trim(const std::string& s);

// Strict full-field parse: no trailing junk, finite values only.
bool try_parse_double(const std::string& field, double* out);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace kerrpcw::detail

#endif  // KERRPCW_SRC_TEXT_UTIL_HPP
