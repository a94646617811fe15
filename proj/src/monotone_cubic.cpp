#include "kerrpcw/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kerrpcw {

namespace {

// Not-a-knot cubic spline nodal derivatives via the Thomas algorithm.
// n == 2 falls back to the secant, n == 3 to the interpolating parabola.
std::vector<double> spline_derivatives(const std::vector<double>& x,
                                       const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n);

  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    return d;
  }
  if (n == 3) {
    // derivative of the unique parabola through the three points
    for (std::size_t i = 0; i < 3; ++i) {
      const double xi = x[i];
      d[i] = y[0] * (2 * xi - x[1] - x[2]) / ((x[0] - x[1]) * (x[0] - x[2])) +
             y[1] * (2 * xi - x[0] - x[2]) / ((x[1] - x[0]) * (x[1] - x[2])) +
             y[2] * (2 * xi - x[0] - x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));
    }
    return d;
  }

  // Tridiagonal system for first derivatives; rows 0 and n-1 encode the
  // not-a-knot conditions (third derivative continuous across x1, x_{n-2}).
  std::vector<double> lower(n), diag(n), upper(n), rhs(n);
  {
    const double h0 = x[1] - x[0];
    const double h1 = x[2] - x[1];
    const double s0 = (y[1] - y[0]) / h0;
    const double s1 = (y[2] - y[1]) / h1;
    diag[0] = h1;
    upper[0] = h0 + h1;
    rhs[0] = ((h0 + 2 * (h0 + h1)) * h1 * s0 + h0 * h0 * s1) / (h0 + h1);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double ha = x[i] - x[i - 1];
    const double hb = x[i + 1] - x[i];
    const double sa = (y[i] - y[i - 1]) / ha;
    const double sb = (y[i + 1] - y[i]) / hb;
    lower[i] = hb;
    diag[i] = 2 * (ha + hb);
    upper[i] = ha;
    rhs[i] = 3 * (hb * sa + ha * sb);
  }
  {
    const double hm = x[n - 2] - x[n - 3];
    const double hl = x[n - 1] - x[n - 2];
    const double sm = (y[n - 2] - y[n - 3]) / hm;
    const double sl = (y[n - 1] - y[n - 2]) / hl;
    lower[n - 1] = hm + hl;
    diag[n - 1] = hm;
    rhs[n - 1] = (hl * hl * sm + (2 * (hm + hl) + hl) * hm * sl) / (hm + hl);
  }

  // Thomas solve
  std::vector<double> cp(n), dp(n);
  cp[0] = upper[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - lower[i] * cp[i - 1];
    cp[i] = (i + 1 < n) ? upper[i] / m : 0.0;
    dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / m;
  }
  d[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) d[i] = dp[i] - cp[i] * d[i + 1];
  return d;
}

// Hyman limiter: clamp nodal derivatives into the monotone region.
void limit_derivatives(const std::vector<double>& x, const std::vector<double>& y,
                       std::vector<double>& d) {
  const std::size_t n = x.size();
  if (n < 2) return;
  std::vector<double> s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);

  for (std::size_t i = 0; i < n; ++i) {
    const double sl = (i == 0) ? s[0] : s[i - 1];
    const double sr = (i + 1 == n) ? s[n - 2] : s[i];
    if (i > 0 && i + 1 < n && sl * sr <= 0.0) {
      d[i] = 0.0;  // interior extremum in the data
      continue;
    }
    if (d[i] * sl < 0.0 || sl == 0.0) {
      d[i] = 0.0;
      continue;
    }
    const double bound = 3.0 * std::min(std::abs(sl), std::abs(sr));
    d[i] = std::copysign(std::min(std::abs(d[i]), bound), d[i]);
  }
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw std::invalid_argument("x/y size mismatch");
  if (x_.size() < 2) throw std::invalid_argument("need at least 2 samples");
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!(x_[i] < x_[i + 1]))
      throw std::invalid_argument("x samples must be strictly increasing");
  }
  d_ = spline_derivatives(x_, y_);
  limit_derivatives(x_, y_, d_);
}

std::size_t MonotoneCubic::locate(double x) const {
  if (x < x_.front() || x > x_.back())
    throw std::domain_error("evaluation point outside sampled range");
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i > 0) --i;
  if (i + 1 >= x_.size()) i = x_.size() - 2;
  return i;
}

double MonotoneCubic::eval(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

double MonotoneCubic::deriv(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double g00 = (6 * t2 - 6 * t) / h;
  const double g10 = 3 * t2 - 4 * t + 1;
  const double g01 = (-6 * t2 + 6 * t) / h;
  const double g11 = 3 * t2 - 2 * t;
  return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

double MonotoneCubic::second_deriv(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double k00 = (12 * t - 6) / (h * h);
  const double k10 = (6 * t - 4) / h;
  const double k01 = (-12 * t + 6) / (h * h);
  const double k11 = (6 * t - 2) / h;
  return k00 * y_[i] + k10 * d_[i] + k01 * y_[i + 1] + k11 * d_[i + 1];
}

}  // namespace kerrpcw
