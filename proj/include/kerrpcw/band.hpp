#ifndef KERRPCW_BAND_HPP
#define KERRPCW_BAND_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "kerrpcw/monotone_cubic.hpp"

namespace kerrpcw {

// Raised where a formula would divide by v_g and the band is exactly flat.
struct BandEdgeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BandFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One sampled point of a waveguide branch, in the band-file conventions:
// wavevector in units of pi/a and frequency as a/lambda.
struct BandSample {
  double k_pi_a;
  double a_over_lambda;
};

// Dispersion quantities at one k, all SI.
struct DispersionPoint {
  double k;       // [rad/m]
  double omega;   // [rad/s]
  double v_g;     // [m/s]
  double dvg_dk;  // [m^2/s]
};

// Sampled dispersion of one waveguide branch. Samples are validated on
// construction (strictly increasing k, positive frequencies) and the
// interpolant is built once; evaluation is pure after that.
class BandData {
 public:
  BandData(int band_index, double lattice_period_m, std::vector<BandSample> samples);

  int band_index() const { return band_index_; }
  double lattice_period() const { return a_; }
  const std::vector<BandSample>& samples() const { return samples_; }

  double k_min_pi_a() const { return samples_.front().k_pi_a; }
  double k_max_pi_a() const { return samples_.back().k_pi_a; }

  // Interpolated dispersion at k (units of pi/a). No extrapolation: the
  // band edge is exactly where v_g -> 0, so out-of-range k is rejected.
  DispersionPoint evaluate(double k_pi_a) const;

 private:
  int band_index_;
  double a_;
  std::vector<BandSample> samples_;
  MonotoneCubic interp_;  // a/lambda as a function of k in pi/a
};

// Parses the delimited band-file format:
//   # a = <value> m
//   # band = <m>
//   k_pi_a, a_over_lambda
//   <k>, <f>
// Exact column names required; malformed rows are reported with their line
// number.
BandData load_band(std::istream& in, const std::string& origin = "<stream>");
BandData load_band(const std::filesystem::path& path);

void write_band(std::ostream& out, const BandData& band);

// Slow-light factor c / |v_g|. Exactly flat dispersion is signaled, not
// clamped; downstream formulas divide by v_g.
double slowdown(const DispersionPoint& p);

}  // namespace kerrpcw

#endif  // KERRPCW_BAND_HPP
