#include "kerrpcw/feasibility.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kerrpcw/band.hpp"
#include "kerrpcw/constants.hpp"

namespace kerrpcw {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                std::to_string(v));
  }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

BulkScenario::BulkScenario(MaterialParams m, double lambda_s_m, double lambda_p_m,
                           double tau_s_s, double area_m2, double length_m)
    : material(std::move(m)),
      lambda_s(lambda_s_m),
      lambda_p(lambda_p_m),
      tau_s(tau_s_s),
      area(area_m2),
      length(length_m) {
  require_positive(lambda_s, "lambda_s");
  require_positive(lambda_p, "lambda_p");
  require_positive(tau_s, "tau_s");
  require_positive(area, "area");
  require_positive(length, "length");
}

PcwScenario::PcwScenario(MaterialParams m, double gamma_sp_per_m2, double v_s_m_per_s,
                         double v_p_m_per_s, double length_m, double tau_s_s,
                         double omega_s_rad_per_s, double omega_p_rad_per_s)
    : material(std::move(m)),
      gamma_sp(gamma_sp_per_m2),
      v_s(v_s_m_per_s),
      v_p(v_p_m_per_s),
      length(length_m),
      tau_s(tau_s_s),
      omega_s(omega_s_rad_per_s),
      omega_p(omega_p_rad_per_s) {
  if (!(gamma_sp >= 0.0)) throw std::invalid_argument("gamma_sp must be >= 0");
  if (!(v_s >= 0.0) || v_s > constants::c) {
    throw std::invalid_argument("v_s must lie in (0, c], got " + std::to_string(v_s));
  }
  if (!(v_p >= 0.0) || v_p > constants::c) {
    throw std::invalid_argument("v_p must lie in (0, c], got " + std::to_string(v_p));
  }
  require_positive(length, "length");
  require_positive(tau_s, "tau_s");
  require_positive(omega_s, "omega_s");
  require_positive(omega_p, "omega_p");
}

double bulk_phase_per_photon(const BulkScenario& s) {
  const double pi2 = constants::pi * constants::pi;
  return 4.0 * pi2 * constants::c * constants::hbar * s.material.kerr_index() * s.length /
         (s.lambda_s * s.lambda_p * s.tau_s * s.area);
}

double enhancement(double v_g, double area_bulk, double area_pcw) {
  require_positive(v_g, "v_g");
  require_positive(area_bulk, "area_bulk");
  require_positive(area_pcw, "area_pcw");
  const double slowdown = constants::c / v_g;
  return slowdown * slowdown * area_bulk / area_pcw;
}

double phase_ideal(const PcwScenario& s) {
  if (s.v_s == 0.0 || s.v_p == 0.0) {
    throw BandEdgeError("phase_ideal diverges at zero group velocity (band edge)");
  }
  return constants::c * s.material.kerr_index() * s.gamma_sp * constants::hbar * s.omega_s *
         s.omega_p * (s.length / s.v_p) / (s.v_s * s.tau_s);
}

VarianceBreakdown observed_variance(const PulseSpec& signal, const PulseSpec& probe,
                                    double phi_s) {
  if (!(phi_s >= 0.0) || !std::isfinite(phi_s)) {
    throw std::invalid_argument("phi_s must be >= 0, got " + std::to_string(phi_s));
  }
  VarianceBreakdown out;
  out.signal_kind = signal.state_kind;
  out.measurement_inverse = 4.0 * phi_s * phi_s * probe.photon_number;
  out.measurement_possible = out.measurement_inverse > 0.0;
  if (signal.state_kind == StateKind::coherent) {
    out.intrinsic_inverse =
        signal.photon_number > 0.0 ? 1.0 / signal.photon_number : kInf;
    out.variance = 1.0 / (out.intrinsic_inverse + out.measurement_inverse);
  } else {
    out.intrinsic_inverse = 0.0;
    out.variance = out.measurement_possible ? 1.0 / out.measurement_inverse : kInf;
  }
  return out;
}

ProbeRequirement probe_requirement(double phi_s, double omega_p) {
  require_positive(omega_p, "omega_p");
  if (!(phi_s > 0.0)) {
    throw std::domain_error("no probe size reaches unit signal-to-noise at zero phase");
  }
  ProbeRequirement out;
  out.n_p = 1.0 / (4.0 * phi_s * phi_s);
  out.energy = out.n_p * constants::hbar * omega_p;
  return out;
}

ProbeRequirement probe_requirement(double phi_s, double n_s, double beta, double omega_p) {
  require_positive(omega_p, "omega_p");
  require_positive(n_s, "N_s");
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1), got " + std::to_string(beta));
  }
  if (!(phi_s > 0.0)) {
    throw std::domain_error("no probe size reaches the error target at zero phase");
  }
  ProbeRequirement out;
  out.n_p = 1.0 / (4.0 * phi_s * phi_s * beta * n_s);
  out.energy = out.n_p * constants::hbar * omega_p;
  return out;
}

LossLimits loss_limits(const MaterialParams& material, double v_p, double intensity) {
  if (!(v_p > 0.0) || v_p > constants::c) {
    throw std::invalid_argument("v_p must lie in (0, c], got " + std::to_string(v_p));
  }
  if (!(intensity >= 0.0)) {
    throw std::invalid_argument("intensity must be >= 0, got " + std::to_string(intensity));
  }
  LossLimits out;
  const double a1 = material.linear_loss();
  out.linear_length_limit = a1 > 0.0 ? 1.0 / a1 : kInf;
  out.linear_device_limit = a1 > 0.0 ? (1.0 / a1) * (v_p / constants::c) : kInf;
  const double a2i = material.two_photon_loss() * intensity;
  out.tpa_length_limit = a2i > 0.0 ? 1.0 / a2i : kInf;
  return out;
}

void write_report_text(std::ostream& out, const FeasibilityReport& report) {
  std::ostringstream ss;
  ss.precision(std::numeric_limits<double>::max_digits10);
  ss << "phi_per_photon_rad = " << report.phi_per_photon << "\n";
  ss << "required_np = " << report.required_np << "\n";
  ss << "required_energy_J = " << report.required_energy << "\n";
  ss << "enhancement = " << report.enhancement << "\n";
  ss << "linear_length_limit_m = " << report.loss.linear_length_limit << "\n";
  ss << "linear_device_limit_m = " << report.loss.linear_device_limit << "\n";
  ss << "tpa_length_limit_m = " << report.loss.tpa_length_limit << "\n";
  ss << "noise_variance = " << report.noise.variance << "\n";
  ss << "noise_intrinsic_inverse = " << report.noise.intrinsic_inverse << "\n";
  ss << "noise_measurement_inverse = " << report.noise.measurement_inverse << "\n";
  ss << "noise_signal_kind = "
     << (report.noise.signal_kind == StateKind::coherent ? "coherent" : "number") << "\n";
  ss << "noise_measurement_possible = " << (report.noise.measurement_possible ? 1 : 0)
     << "\n";
  out << ss.str();
}

void write_report_csv_header(std::ostream& out) {
  out << "phi_per_photon_rad, required_np, required_energy_J, enhancement, "
         "linear_length_limit_m, linear_device_limit_m, tpa_length_limit_m, "
         "noise_variance, noise_intrinsic_inverse, noise_measurement_inverse\n";
}

void write_report_csv_row(std::ostream& out, const FeasibilityReport& report) {
  std::ostringstream ss;
  ss.precision(std::numeric_limits<double>::max_digits10);
  ss << report.phi_per_photon << ", " << report.required_np << ", "
     << report.required_energy << ", " << report.enhancement << ", "
     << report.loss.linear_length_limit << ", " << report.loss.linear_device_limit << ", "
     << report.loss.tpa_length_limit << ", " << report.noise.variance << ", "
     << report.noise.intrinsic_inverse << ", " << report.noise.measurement_inverse << "\n";
  out << ss.str();
}

}  // namespace kerrpcw
