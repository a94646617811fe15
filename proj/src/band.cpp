#include "kerrpcw/band.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "kerrpcw/constants.hpp"
#include "text_util.hpp"

namespace kerrpcw {

namespace {

using detail::trim;

double parse_double(const std::string& field, const std::string& origin, int line) {
  double v = 0.0;
  if (!detail::try_parse_double(field, &v)) {
    throw BandFileError(origin + ":" + std::to_string(line) + ": bad numeric value '" +
                        trim(field) + "'");
  }
  return v;
}

std::vector<double> extract(const std::vector<BandSample>& s, bool freq) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& p : s) out.push_back(freq ? p.a_over_lambda : p.k_pi_a);
  return out;
}

}  // namespace

BandData::BandData(int band_index, double lattice_period_m, std::vector<BandSample> samples)
    : band_index_(band_index),
      a_(lattice_period_m),
      samples_(std::move(samples)),
      interp_(extract(samples_, false), extract(samples_, true)) {
  if (band_index_ < 1) {
    throw std::invalid_argument("band index must be >= 1, got " + std::to_string(band_index_));
  }
  if (!(a_ > 0.0) || !std::isfinite(a_)) {
    throw std::invalid_argument("lattice period must be positive, got " + std::to_string(a_));
  }
  // MonotoneCubic already rejects non-increasing k; frequencies are ours to check.
  for (const auto& p : samples_) {
    if (!(p.a_over_lambda > 0.0)) {
      throw std::invalid_argument("band frequency a/lambda must be positive, got " +
                                  std::to_string(p.a_over_lambda));
    }
  }
}

DispersionPoint BandData::evaluate(double k_pi_a) const {
  const double f = interp_.eval(k_pi_a);
  const double fp = interp_.deriv(k_pi_a);
  const double fpp = interp_.second_deriv(k_pi_a);

  DispersionPoint p;
  p.k = k_pi_a * constants::pi / a_;
  // omega = 2 pi c (a/lambda) / a; derivatives chain through dk = (pi/a) dk_pi_a.
  p.omega = 2.0 * constants::pi * constants::c * f / a_;
  p.v_g = 2.0 * constants::c * fp;
  p.dvg_dk = 2.0 * constants::c * fpp * a_ / constants::pi;

  if (std::abs(p.v_g) > constants::c * (1.0 + 1e-12)) {
    throw std::domain_error("group velocity exceeds c at k = " + std::to_string(k_pi_a) +
                            " pi/a; band data is unphysical");
  }
  return p;
}

BandData load_band(std::istream& in, const std::string& origin) {
  std::optional<double> a;
  std::optional<int> band_index;
  bool header_seen = false;
  std::vector<BandSample> samples;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;  // plain comment
      const std::string key = trim(body.substr(0, eq));
      const std::string val = trim(body.substr(eq + 1));
      if (key == "a") {
        if (a) {
          throw BandFileError(origin + ":" + std::to_string(lineno) + ": duplicate 'a' metadata");
        }
        // value is "<number> m"
        const auto sp = val.find_last_of(" \t");
        if (sp == std::string::npos || trim(val.substr(sp + 1)) != "m") {
          throw BandFileError(origin + ":" + std::to_string(lineno) +
                              ": lattice period must be given in meters, e.g. '# a = 4.0e-7 m'");
        }
        const double v = parse_double(val.substr(0, sp), origin, lineno);
        if (!(v > 0.0)) {
          throw BandFileError(origin + ":" + std::to_string(lineno) +
                              ": lattice period must be positive");
        }
        a = v;
      } else if (key == "band") {
        if (band_index) {
          throw BandFileError(origin + ":" + std::to_string(lineno) +
                              ": duplicate 'band' metadata");
        }
        const double v = parse_double(val, origin, lineno);
        const int m = static_cast<int>(v);
        if (v != static_cast<double>(m) || m < 1) {
          throw BandFileError(origin + ":" + std::to_string(lineno) +
                              ": band index must be a positive integer, got '" + val + "'");
        }
        band_index = m;
      }
      // unknown '#' keys are treated as comments
      continue;
    }

    if (!header_seen) {
      if (t != "k_pi_a, a_over_lambda") {
        throw BandFileError(origin + ":" + std::to_string(lineno) +
                            ": expected header 'k_pi_a, a_over_lambda', got '" + t + "'");
      }
      header_seen = true;
      continue;
    }

    const auto comma = t.find(',');
    if (comma == std::string::npos || t.find(',', comma + 1) != std::string::npos) {
      throw BandFileError(origin + ":" + std::to_string(lineno) +
                          ": expected exactly two comma-separated columns, got '" + t + "'");
    }
    BandSample s;
    s.k_pi_a = parse_double(t.substr(0, comma), origin, lineno);
    s.a_over_lambda = parse_double(t.substr(comma + 1), origin, lineno);
    if (!samples.empty() && !(s.k_pi_a > samples.back().k_pi_a)) {
      throw BandFileError(origin + ":" + std::to_string(lineno) +
                          ": wavevector samples must be strictly increasing");
    }
    if (!(s.a_over_lambda > 0.0)) {
      throw BandFileError(origin + ":" + std::to_string(lineno) +
                          ": a/lambda must be positive");
    }
    samples.push_back(s);
  }

  if (!a) throw BandFileError(origin + ": missing '# a = <value> m' metadata line");
  if (!band_index) throw BandFileError(origin + ": missing '# band = <m>' metadata line");
  if (!header_seen) throw BandFileError(origin + ": missing 'k_pi_a, a_over_lambda' header");
  if (samples.size() < 2) {
    throw BandFileError(origin + ": need at least two samples, got " +
                        std::to_string(samples.size()));
  }
  return BandData(*band_index, *a, std::move(samples));
}

BandData load_band(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw BandFileError("cannot open band file: " + path.string());
  }
  return load_band(in, path.string());
}

void write_band(std::ostream& out, const BandData& band) {
  std::ostringstream ss;
  ss.precision(std::numeric_limits<double>::max_digits10);
  ss << "# a = " << band.lattice_period() << " m\n";
  ss << "# band = " << band.band_index() << "\n";
  ss << "k_pi_a, a_over_lambda\n";
  for (const auto& s : band.samples()) {
    ss << s.k_pi_a << ", " << s.a_over_lambda << "\n";
  }
  out << ss.str();
}

double slowdown(const DispersionPoint& p) {
  if (p.v_g == 0.0) {
    throw BandEdgeError("group velocity vanishes at k = " + std::to_string(p.k) +
                        " rad/m (band edge); slowdown factor is undefined");
  }
  return constants::c / std::abs(p.v_g);
}

}  // namespace kerrpcw
