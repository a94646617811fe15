#include "kerrpcw/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "kerrpcw/constants.hpp"
#include "kerrpcw/fft.hpp"
#include "kerrpcw/reduce.hpp"

namespace kerrpcw {

namespace {

// Amplitude threshold for the initial decay-on-the-ring check; ring wrap
// during a run is governed by SolverConfig::wrap_tol instead.
constexpr double kInitDecayTol = 1e-6;

double norm_integral(const std::vector<std::complex<double>>& x, double dz) {
  std::vector<double> terms(x.size());
  for (size_t j = 0; j < x.size(); ++j) terms[j] = std::norm(x[j]);
  return constants::eps0 * pairwise_sum(terms) * dz;
}

void abs2_range(const std::vector<std::complex<double>>& x, double* min2, double* max2) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& z : x) {
    const double m = std::norm(z);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  *min2 = lo;
  *max2 = hi;
}

std::vector<std::complex<double>> build_profile(const PulseSpec& spec,
                                                const EnvelopeShape& shape,
                                                const EnvelopeGrid& grid,
                                                const std::string& label) {
  const size_t n = grid.n();
  std::vector<std::complex<double>> x(n, 0.0);
  if (spec.photon_number == 0.0) return x;

  if (shape.kind == EnvelopeShape::Kind::gaussian) {
    if (!(shape.width_z > 0.0)) {
      throw std::invalid_argument(label + ": gaussian width must be positive");
    }
    const double w = shape.width_z;
    const double fwhm = 2.0 * std::sqrt(std::log(2.0)) * w;
    if (fwhm < 8.0 * grid.dz()) {
      throw std::invalid_argument(label + ": unresolvable width: FWHM " +
                                  std::to_string(fwhm) + " m spans fewer than 8 grid "
                                  "points (dz = " + std::to_string(grid.dz()) +
                                  " m); refine the grid");
    }
    const double L = grid.length();
    for (size_t j = 0; j < n; ++j) {
      double d = grid.z(j) - shape.center_z;
      d -= L * std::round(d / L);  // minimal image on the ring
      x[j] = std::exp(-d * d / (2.0 * w * w));
    }
  } else {
    if (shape.samples.size() != n) {
      throw std::invalid_argument(label + ": sampled profile has " +
                                  std::to_string(shape.samples.size()) +
                                  " points, grid has " + std::to_string(n));
    }
    x = shape.samples;
  }

  const double target = spec.energy();
  const double raw = norm_integral(x, grid.dz());
  if (!(raw > 0.0)) {
    throw std::invalid_argument(label + ": profile is identically zero but photon number "
                                "is nonzero");
  }
  const double scale = std::sqrt(target / raw);
  for (auto& z : x) z *= scale;

  double min2 = 0.0, max2 = 0.0;
  abs2_range(x, &min2, &max2);
  if (min2 > kInitDecayTol * kInitDecayTol * max2) {
    throw std::invalid_argument(label + ": pulse does not decay below " +
                                std::to_string(kInitDecayTol) +
                                " of peak anywhere on the ring; the profile is wider "
                                "than the domain");
  }
  return x;
}

// Per-envelope coefficients of the pointwise nonlinear + loss operator.
// phase_* are rad/s per V^2; amp_* are amplitude decay rates, 1/s (constant
// part) and 1/s per V^2 (intensity-driven parts).
struct NonlinearCoefs {
  double phase_s_self = 0.0, phase_s_cross = 0.0;
  double phase_p_self = 0.0, phase_p_cross = 0.0;
  double amp_s_lin = 0.0, amp_p_lin = 0.0;
  double tpa_s_self = 0.0, tpa_s_cross = 0.0;
  double tpa_p_self = 0.0, tpa_p_cross = 0.0;
};

struct StepPlan {
  const SpectralTransform& fft;
  std::vector<std::complex<double>> lin_s;
  std::vector<std::complex<double>> lin_p;
  NonlinearCoefs nl;
  bool nonlinear_on = true;
  bool loss_on = true;
  double dt = 0.0;
};

void require_consistent(const PulseState& state, const OverlapTable& gamma) {
  const size_t n = state.grid.n();
  if (state.S.size() != n || state.P.size() != n) {
    throw std::invalid_argument("state arrays (" + std::to_string(state.S.size()) + ", " +
                                std::to_string(state.P.size()) +
                                ") do not match the grid (" + std::to_string(n) + ")");
  }
  if (state.mode_s >= gamma.n || state.mode_p >= gamma.n) {
    throw std::invalid_argument("mode indices (" + std::to_string(state.mode_s) + ", " +
                                std::to_string(state.mode_p) +
                                ") outside the overlap table of size " +
                                std::to_string(gamma.n));
  }
}

StepPlan make_plan(const SpectralTransform& fft, const PulseState& state,
                   const SolverConfig& config, const DispersionPoint& disp_s,
                   const DispersionPoint& disp_p, const OverlapTable& gamma,
                   const MaterialParams& material, double dt, bool nonlinear_on,
                   bool loss_on) {
  const size_t n = state.grid.n();
  StepPlan plan{fft, {}, {}, {}, nonlinear_on, loss_on, dt};

  const double g_ss = gamma.gamma_at(state.mode_s, state.mode_s);
  const double g_pp = gamma.gamma_at(state.mode_p, state.mode_p);
  const double g_sp = gamma.gamma_at(state.mode_s, state.mode_p);
  const double k = kappa(material);
  const double w_s = state.spec_s.carrier.angular_frequency();
  const double w_p = state.spec_p.carrier.angular_frequency();

  plan.nl.phase_s_self = 0.5 * k * w_s * g_ss;
  plan.nl.phase_s_cross = 0.5 * k * w_s * xpm_to_spm_ratio() * g_sp;
  plan.nl.phase_p_self = 0.5 * k * w_p * g_pp;
  plan.nl.phase_p_cross = 0.5 * k * w_p * xpm_to_spm_ratio() * g_sp;

  const double v_s = disp_s.v_g;
  const double v_p = disp_p.v_g;
  if (config.include_linear_loss) {
    const double a1 = material.linear_loss();
    plan.nl.amp_s_lin = 0.5 * std::abs(v_s) * a1;
    plan.nl.amp_p_lin = 0.5 * std::abs(v_p) * a1;
  }
  if (config.include_tpa && material.two_photon_loss() > 0.0) {
    if (v_s == 0.0 || v_p == 0.0) {
      throw std::domain_error("two-photon intensity undefined at zero group velocity");
    }
    // Local slow-light-enhanced intensity per V^2 of envelope: the overlap
    // gamma stands in for the inverse effective mode area.
    const double pre = 0.5 * constants::c * constants::eps0 * material.refractive_index();
    const double i_ss = pre * g_ss * (constants::c / std::abs(v_s));
    const double i_pp = pre * g_pp * (constants::c / std::abs(v_p));
    const double i_sp = pre * g_sp * (constants::c / std::abs(v_p));  // probe seen by signal
    const double i_ps = pre * g_sp * (constants::c / std::abs(v_s));  // signal seen by probe
    const double a2 = material.two_photon_loss();
    plan.nl.tpa_s_self = 0.5 * std::abs(v_s) * a2 * i_ss;
    plan.nl.tpa_s_cross = 0.5 * std::abs(v_s) * a2 * xpm_to_spm_ratio() * i_sp;
    plan.nl.tpa_p_self = 0.5 * std::abs(v_p) * a2 * i_pp;
    plan.nl.tpa_p_cross = 0.5 * std::abs(v_p) * a2 * xpm_to_spm_ratio() * i_ps;
  }

  const bool comoving = state.grid.frame() == Frame::comoving_probe;
  const double v_adv_s = comoving ? v_s - v_p : v_s;
  const double v_adv_p = comoving ? 0.0 : v_p;
  const double b_s = config.include_gvd ? 0.5 * disp_s.dvg_dk : 0.0;
  const double b_p = config.include_gvd ? 0.5 * disp_p.dvg_dk : 0.0;

  const auto q = SpectralTransform::wavenumbers(n, state.grid.length());
  plan.lin_s.resize(n);
  plan.lin_p.resize(n);
  for (size_t j = 0; j < n; ++j) {
    plan.lin_s[j] = std::polar(1.0, -(v_adv_s * q[j] + b_s * q[j] * q[j]) * dt);
    plan.lin_p[j] = std::polar(1.0, -(v_adv_p * q[j] + b_p * q[j] * q[j]) * dt);
  }
  return plan;
}

void half_nonlinear(PulseState& state, const StepPlan& plan) {
  if (!plan.nonlinear_on && !plan.loss_on) return;
  const double h = 0.5 * plan.dt;
  const NonlinearCoefs& nl = plan.nl;
  for (size_t j = 0; j < state.S.size(); ++j) {
    const double a2 = std::norm(state.S[j]);
    const double p2 = std::norm(state.P[j]);
    double ph_s = 0.0, ph_p = 0.0, de_s = 0.0, de_p = 0.0;
    if (plan.nonlinear_on) {
      ph_s = (nl.phase_s_self * a2 + nl.phase_s_cross * p2) * h;
      ph_p = (nl.phase_p_self * p2 + nl.phase_p_cross * a2) * h;
    }
    if (plan.loss_on) {
      de_s = (nl.amp_s_lin + nl.tpa_s_self * a2 + nl.tpa_s_cross * p2) * h;
      de_p = (nl.amp_p_lin + nl.tpa_p_self * p2 + nl.tpa_p_cross * a2) * h;
    }
    state.S[j] *= std::exp(std::complex<double>(-de_s, ph_s));
    state.P[j] *= std::exp(std::complex<double>(-de_p, ph_p));
  }
}

void linear_step(PulseState& state, const StepPlan& plan) {
  plan.fft.forward(state.S);
  for (size_t j = 0; j < state.S.size(); ++j) state.S[j] *= plan.lin_s[j];
  plan.fft.inverse(state.S);
  plan.fft.forward(state.P);
  for (size_t j = 0; j < state.P.size(); ++j) state.P[j] *= plan.lin_p[j];
  plan.fft.inverse(state.P);
}

void advance(PulseState& state, const StepPlan& plan) {
  half_nonlinear(state, plan);
  linear_step(state, plan);
  half_nonlinear(state, plan);
  state.t += plan.dt;
}

void check_finite(const PulseState& state, long long step_index, const char* run) {
  for (const auto& z : state.S) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::runtime_error(std::string("non-finite signal envelope in ") + run +
                               " run at step " + std::to_string(step_index) + " (t = " +
                               std::to_string(state.t) + " s); reduce dt or check inputs");
    }
  }
  for (const auto& z : state.P) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::runtime_error(std::string("non-finite probe envelope in ") + run +
                               " run at step " + std::to_string(step_index) + " (t = " +
                               std::to_string(state.t) + " s); reduce dt or check inputs");
    }
  }
}

void check_wrap(const PulseState& state, double wrap_tol, long long step_index) {
  const double tol2 = wrap_tol * wrap_tol;
  double min2 = 0.0, max2 = 0.0;
  if (state.spec_s.photon_number > 0.0) {
    abs2_range(state.S, &min2, &max2);
    if (max2 > 0.0 && min2 > tol2 * max2) {
      throw std::runtime_error("signal wrapped around the periodic domain at step " +
                               std::to_string(step_index) + " (t = " +
                               std::to_string(state.t) +
                               " s); enlarge the z domain or shorten the run");
    }
  }
  if (state.spec_p.photon_number > 0.0) {
    abs2_range(state.P, &min2, &max2);
    if (max2 > 0.0 && min2 > tol2 * max2) {
      throw std::runtime_error("probe wrapped around the periodic domain at step " +
                               std::to_string(step_index) + " (t = " +
                               std::to_string(state.t) +
                               " s); enlarge the z domain or shorten the run");
    }
  }
}

void emit_snapshot(const PulseState& state, const SolverConfig& config, size_t* index) {
  if (config.snapshot_every <= 0 || config.snapshot_dir.empty()) return;
  std::filesystem::create_directories(config.snapshot_dir);
  std::ostringstream name;
  name << "snapshot_" << std::setw(6) << std::setfill('0') << *index << ".csv";
  const auto path = config.snapshot_dir / name.str();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write snapshot file: " + path.string());
  write_snapshot(out, state);
  ++*index;
}

}  // namespace

EnvelopeGrid::EnvelopeGrid(double length_m, size_t n_points, Frame frame)
    : length_(length_m), n_(n_points), frame_(frame) {
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw std::invalid_argument("domain length must be positive");
  }
  if (n_ < 16 || (n_ & (n_ - 1)) != 0) {
    throw std::invalid_argument("n_points must be a power of two >= 16, got " +
                                std::to_string(n_));
  }
}

EnvelopeShape gaussian_shape(double center_z, double width_z) {
  EnvelopeShape s;
  s.kind = EnvelopeShape::Kind::gaussian;
  s.center_z = center_z;
  s.width_z = width_z;
  return s;
}

EnvelopeShape sampled_shape(std::vector<std::complex<double>> samples) {
  EnvelopeShape s;
  s.kind = EnvelopeShape::Kind::sampled;
  s.samples = std::move(samples);
  return s;
}

double equivalent_gaussian_width(double v_g, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("pulse width tau must be positive");
  return std::abs(v_g) * tau / std::sqrt(std::numbers::pi);
}

double PulseState::photon_norm_signal() const { return norm_integral(S, grid.dz()); }
double PulseState::photon_norm_probe() const { return norm_integral(P, grid.dz()); }

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("solver dt must be positive, got " + std::to_string(dt));
  }
  if (!(wrap_tol > 0.0) || !(wrap_tol < 1.0)) {
    throw std::invalid_argument("wrap_tol must lie in (0, 1)");
  }
  if (snapshot_every < 0) {
    throw std::invalid_argument("snapshot_every must be >= 0");
  }
}

double auto_dt(const EnvelopeGrid& grid, const DispersionPoint& disp_s,
               const DispersionPoint& disp_p, double safety) {
  if (!(safety > 0.0)) throw std::invalid_argument("safety factor must be positive");
  const double vmax = std::max(std::abs(disp_s.v_g), std::abs(disp_p.v_g));
  if (vmax == 0.0) {
    throw BandEdgeError("auto_dt undefined: both group velocities vanish");
  }
  return safety * grid.dz() / vmax;
}

PulseState init_state(const PulseSpec& spec_s, const PulseSpec& spec_p,
                      const EnvelopeShape& shape_s, const EnvelopeShape& shape_p,
                      const EnvelopeGrid& grid) {
  PulseState state{grid, spec_s, spec_p, 0, 1,
                   build_profile(spec_s, shape_s, grid, "signal"),
                   build_profile(spec_p, shape_p, grid, "probe"), 0.0};
  return state;
}

PulseState step(const PulseState& state, const SolverConfig& config,
                const DispersionPoint& disp_s, const DispersionPoint& disp_p,
                const OverlapTable& gamma, const MaterialParams& material) {
  config.validate();
  require_consistent(state, gamma);
  SpectralTransform fft(state.grid.n());
  StepPlan plan = make_plan(fft, state, config, disp_s, disp_p, gamma, material,
                            config.dt, true, true);
  PulseState out = state;
  advance(out, plan);
  check_finite(out, 1, "single-step");
  return out;
}

std::pair<PulseState, PhaseReport> propagate(const PulseState& state,
                                             const SolverConfig& config,
                                             const DispersionPoint& disp_s,
                                             const DispersionPoint& disp_p,
                                             const OverlapTable& gamma,
                                             const MaterialParams& material,
                                             double duration) {
  config.validate();
  require_consistent(state, gamma);
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("duration must be >= 0, got " + std::to_string(duration));
  }

  PulseState full = state;
  PulseState no_signal = state;
  std::fill(no_signal.S.begin(), no_signal.S.end(), std::complex<double>(0.0));
  no_signal.spec_s = PulseSpec(state.spec_s.carrier, state.spec_s.temporal_width, 0.0,
                               state.spec_s.state_kind);
  PulseState linear_ref = state;

  const size_t n = state.grid.n();
  PhaseReport report;
  report.phi_field.assign(n, 0.0);

  if (duration > 0.0) {
    const double walk_off = std::abs(disp_s.v_g - disp_p.v_g) * duration;
    const double w_s = equivalent_gaussian_width(disp_s.v_g, state.spec_s.temporal_width);
    const double w_p = equivalent_gaussian_width(disp_p.v_g, state.spec_p.temporal_width);
    const double span = walk_off + 5.3 * (w_s + w_p);
    if (span > state.grid.length()) {
      throw std::runtime_error(
          "walk-off plus pulse extent (" + std::to_string(span) +
          " m) exceeds the periodic domain (" + std::to_string(state.grid.length()) +
          " m); enlarge the z domain or shorten the run");
    }

    long long n_steps = static_cast<long long>(std::ceil(duration / config.dt));
    if (n_steps < 1) n_steps = 1;
    const double dt = duration / static_cast<double>(n_steps);

    SpectralTransform fft(n);
    StepPlan plan_full = make_plan(fft, state, config, disp_s, disp_p, gamma, material,
                                   dt, true, true);
    StepPlan plan_linear = make_plan(fft, state, config, disp_s, disp_p, gamma, material,
                                     dt, false, false);

    size_t snap_index = 0;
    emit_snapshot(full, config, &snap_index);
    for (long long k = 1; k <= n_steps; ++k) {
      advance(full, plan_full);
      advance(no_signal, plan_full);
      advance(linear_ref, plan_linear);
      check_finite(full, k, "full");
      check_finite(no_signal, k, "signal-removed");
      check_wrap(full, config.wrap_tol, k);
      if (config.snapshot_every > 0 && k % config.snapshot_every == 0) {
        emit_snapshot(full, config, &snap_index);
      }
    }
  }

  // Probe intensity centroid on the ring (circular mean of grid angles).
  double sx = 0.0, sy = 0.0, total = 0.0;
  const double two_pi = 2.0 * std::numbers::pi;
  for (size_t j = 0; j < n; ++j) {
    const double wgt = std::norm(full.P[j]);
    const double theta = two_pi * static_cast<double>(j) / static_cast<double>(n);
    sx += wgt * std::cos(theta);
    sy += wgt * std::sin(theta);
    total += wgt;
  }
  if (total <= 0.0) {
    return {std::move(full), std::move(report)};  // no probe: all observables zero
  }
  double theta_bar = std::atan2(sy, sx);
  if (theta_bar < 0.0) theta_bar += two_pi;
  size_t centroid = static_cast<size_t>(std::llround(theta_bar / two_pi *
                                                     static_cast<double>(n))) % n;

  for (size_t j = 0; j < n; ++j) {
    report.phi_field[j] = std::arg(std::conj(no_signal.P[j]) * full.P[j]);
  }
  report.phi_S = report.phi_field[centroid];
  report.phi_P = std::arg(std::conj(linear_ref.P[centroid]) * no_signal.P[centroid]);
  report.phi_per_photon = state.spec_s.photon_number > 0.0
                              ? report.phi_S / state.spec_s.photon_number
                              : 0.0;
  report.I_det = detector_signal(full, report.phi_field);
  return {std::move(full), std::move(report)};
}

double detector_signal(const PulseState& final_state,
                       const std::vector<double>& phase_field) {
  if (phase_field.size() != final_state.P.size()) {
    throw std::invalid_argument("phase field has " + std::to_string(phase_field.size()) +
                                " points, probe has " +
                                std::to_string(final_state.P.size()));
  }
  std::vector<double> terms(phase_field.size());
  for (size_t j = 0; j < terms.size(); ++j) {
    terms[j] = std::norm(final_state.P[j]) * phase_field[j];
  }
  return constants::eps0 * pairwise_sum(terms) * final_state.grid.dz();
}

void write_snapshot(std::ostream& out, const PulseState& state) {
  std::ostringstream ss;
  ss.precision(std::numeric_limits<double>::max_digits10);
  ss << "z_m, re_S_V, im_S_V, re_P_V, im_P_V, abs2_S_V2, abs2_P_V2, arg_P_rad\n";
  for (size_t j = 0; j < state.grid.n(); ++j) {
    const auto s = state.S[j];
    const auto p = state.P[j];
    ss << state.grid.z(j) << ", " << s.real() << ", " << s.imag() << ", " << p.real()
       << ", " << p.imag() << ", " << std::norm(s) << ", " << std::norm(p) << ", "
       << std::arg(p) << "\n";
  }
  out << ss.str();
}

}  // namespace kerrpcw
