#ifndef KERRPCW_FEASIBILITY_HPP
#define KERRPCW_FEASIBILITY_HPP

#include <iosfwd>

#include "kerrpcw/material.hpp"
#include "kerrpcw/pulse.hpp"

namespace kerrpcw {

// Bulk-crystal cross-phase setup: two pulses confined to area A over length L.
struct BulkScenario {
  MaterialParams material;
  double lambda_s;  // m
  double lambda_p;  // m
  double tau_s;     // s
  double area;      // m^2
  double length;    // m

  BulkScenario(MaterialParams m, double lambda_s_m, double lambda_p_m, double tau_s_s,
               double area_m2, double length_m);
};

// Slow-light waveguide setup. Group velocities are validated against c; a
// zero velocity is representable so the estimators can signal the band-edge
// degeneracy instead of the constructor.
struct PcwScenario {
  MaterialParams material;
  double gamma_sp;  // 1/m^2, cross overlap
  double v_s;       // m/s
  double v_p;       // m/s
  double length;    // m
  double tau_s;     // s
  double omega_s;   // rad/s
  double omega_p;   // rad/s

  PcwScenario(MaterialParams m, double gamma_sp_per_m2, double v_s_m_per_s,
              double v_p_m_per_s, double length_m, double tau_s_s,
              double omega_s_rad_per_s, double omega_p_rad_per_s);
};

// Photon-number variance seen by the probe interferometer. For a coherent
// signal the inverse variances add: 1/var = 1/N_s + 4 phi^2 N_p. For a number
// state only the measurement term exists: var = 1/(4 phi^2 N_p).
struct VarianceBreakdown {
  StateKind signal_kind = StateKind::coherent;
  double variance = 0.0;             // <dn^2>
  double intrinsic_inverse = 0.0;    // 1/N_s (coherent only)
  double measurement_inverse = 0.0;  // 4 phi^2 N_p
  bool measurement_possible = false;
};

struct ProbeRequirement {
  double n_p = 0.0;     // probe photons
  double energy = 0.0;  // J, always n_p * hbar * omega_p
};

struct LossLimits {
  // Bound on the slow-light effective path L*(c/v_p) from linear loss: 1/alpha1.
  double linear_length_limit = 0.0;
  // Physical device length keeping L*(c/v_p) under the linear bound.
  double linear_device_limit = 0.0;
  // Two-photon attenuation length 1/(alpha2 * I) at the supplied intensity.
  double tpa_length_limit = 0.0;
};

// Everything the estimate command reports for one scenario.
struct FeasibilityReport {
  double phi_per_photon = 0.0;  // rad
  double required_np = 0.0;
  double required_energy = 0.0;  // J, = required_np * hbar * omega_p
  double enhancement = 0.0;
  LossLimits loss;
  VarianceBreakdown noise;
};

// Cross-phase per signal photon in bulk: 4 pi^2 c hbar n2 L / (lambda_s
// lambda_p tau_s A).
double bulk_phase_per_photon(const BulkScenario& s);

// Slow-light and confinement gain over bulk: (c/v_g)^2 * A_bulk / A_pcw.
double enhancement(double v_g, double area_bulk, double area_pcw);

// Ideal waveguide phase per signal photon:
// c n2 gamma_sp hbar omega_s omega_p (L/v_p) / (v_s tau_s).
double phase_ideal(const PcwScenario& s);

VarianceBreakdown observed_variance(const PulseSpec& signal, const PulseSpec& probe,
                                    double phi_s);

// Number-state sizing at unit signal-to-noise: N_p = 1/(4 phi_s^2).
ProbeRequirement probe_requirement(double phi_s, double omega_p);

// Relaxed coherent sizing tolerating variance beta*N_s: N_p = 1/(4 phi_s^2
// beta N_s). Requires 0 < beta < 1.
ProbeRequirement probe_requirement(double phi_s, double n_s, double beta, double omega_p);

LossLimits loss_limits(const MaterialParams& material, double v_p, double intensity);

// key = value lines, one field per line, units in the key names.
void write_report_text(std::ostream& out, const FeasibilityReport& report);
// Single-row CSV mirror for sweep aggregation.
void write_report_csv_header(std::ostream& out);
void write_report_csv_row(std::ostream& out, const FeasibilityReport& report);

}  // namespace kerrpcw

#endif  // KERRPCW_FEASIBILITY_HPP
