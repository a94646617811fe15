#ifndef KERRPCW_MONOTONE_CUBIC_HPP
#define KERRPCW_MONOTONE_CUBIC_HPP

#include <cstddef>
#include <vector>

namespace kerrpcw {

// Shape-preserving cubic interpolant: C^2 spline nodal derivatives
// (not-a-knot end conditions) passed through the Hyman monotonicity
// limiter, then evaluated as a cubic Hermite piecewise polynomial.
//
// On smooth strictly monotone data the limiter stays inactive, so the
// interpolant keeps full spline accuracy; on flat or kinked data it clamps
// nodal slopes into the region |d| <= 3 min|s| that guarantees no
// overshoot between samples. Derivatives are analytic derivatives of the
// Hermite pieces (the second derivative is one-sided at the knots).
class MonotoneCubic {
 public:
  // x strictly increasing, size >= 2.
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double deriv(double x) const;
  double second_deriv(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  std::size_t size() const { return x_.size(); }

 private:
  std::size_t locate(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;  // nodal first derivatives after limiting
};

}  // namespace kerrpcw

#endif  // KERRPCW_MONOTONE_CUBIC_HPP
