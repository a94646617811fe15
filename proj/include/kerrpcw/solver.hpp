#ifndef KERRPCW_SOLVER_HPP
#define KERRPCW_SOLVER_HPP

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include "kerrpcw/band.hpp"
#include "kerrpcw/material.hpp"
#include "kerrpcw/mode_field.hpp"
#include "kerrpcw/pulse.hpp"

namespace kerrpcw {

// Lab frame integrates both envelopes with their own group velocities; the
// comoving frame subtracts the probe velocity, freezing the probe on the grid.
// Observables agree between frames; comoving keeps long runs on small domains.
enum class Frame { lab, comoving_probe };

// Periodic z-domain for the spectral solver. Power-of-two point count for the
// FFT; the domain must hold both pulses plus their relative walk-off.
class EnvelopeGrid {
 public:
  EnvelopeGrid(double length_m, size_t n_points, Frame frame = Frame::lab);

  double length() const { return length_; }
  size_t n() const { return n_; }
  double dz() const { return length_ / static_cast<double>(n_); }
  Frame frame() const { return frame_; }
  double z(size_t j) const { return dz() * static_cast<double>(j); }

 private:
  double length_;
  size_t n_;
  Frame frame_;
};

// Initial envelope profile. Gaussian shapes are placed with minimal-image
// wrapping on the ring; sampled shapes supply one value per grid point and
// are rescaled to the requested photon number like any other profile.
struct EnvelopeShape {
  enum class Kind { gaussian, sampled };
  Kind kind = Kind::gaussian;
  double center_z = 0.0;  // m
  double width_z = 0.0;   // m; |X(z)|^2 proportional to exp(-(z-c)^2/width^2)
  std::vector<std::complex<double>> samples;
};

EnvelopeShape gaussian_shape(double center_z, double width_z);
EnvelopeShape sampled_shape(std::vector<std::complex<double>> samples);

// Width making the Gaussian's area/peak ratio equal the effective length
// v_g*tau: integral of exp(-z^2/w^2) is sqrt(pi)*w, so w = v_g*tau/sqrt(pi).
double equivalent_gaussian_width(double v_g, double tau);

// Signal and probe envelopes on one grid, in volts, plus elapsed time.
// mode_s/mode_p select the OverlapTable rows feeding the coupling gammas.
// Photon-number normalization: integral eps0|X|^2 dz = N hbar omega.
struct PulseState {
  EnvelopeGrid grid;
  PulseSpec spec_s;
  PulseSpec spec_p;
  size_t mode_s = 0;
  size_t mode_p = 1;
  std::vector<std::complex<double>> S;
  std::vector<std::complex<double>> P;
  double t = 0.0;

  double photon_norm_signal() const;  // J
  double photon_norm_probe() const;   // J
};

struct SolverConfig {
  double dt = 0.0;  // s; must be set explicitly or via auto_dt
  bool include_gvd = false;
  bool include_tpa = false;
  bool include_linear_loss = false;
  // Envelopes must stay below this fraction of their peak somewhere on the
  // ring; violation means the pulse wrapped around the periodic domain.
  double wrap_tol = 1e-6;
  int snapshot_every = 0;  // steps between snapshot files; 0 disables
  std::filesystem::path snapshot_dir;

  void validate() const;
};

// Accuracy-motivated step: safety * dz / max(|v_s|, |v_p|). The split-step
// scheme is unconditionally stable; this just keeps per-step phase advances
// small. Throws if both group velocities vanish.
double auto_dt(const EnvelopeGrid& grid, const DispersionPoint& disp_s,
               const DispersionPoint& disp_p, double safety = 0.5);

// Phase observables of one propagation. phi_S is the probe phase attributable
// to the signal (difference against an identical run with the signal removed);
// phi_P is the probe's self-phase against a linear lossless reference. Both
// are evaluated at the probe intensity centroid. phi_field holds the per-z
// signal-induced phase used for the detector integral.
struct PhaseReport {
  double phi_P = 0.0;           // rad
  double phi_S = 0.0;           // rad
  double phi_per_photon = 0.0;  // rad
  double I_det = 0.0;           // J
  std::vector<double> phi_field;
};

// Cross-phase coupling is exactly twice self-phase coupling; both envelope
// equations are built from this one constant.
constexpr double xpm_to_spm_ratio() { return 2.0; }

// Builds envelopes from shapes and rescales them so the photon-number
// integral holds exactly at t = 0. Rejects unresolvable widths (< 8 points
// per FWHM) and profiles that do not decay on the ring.
PulseState init_state(const PulseSpec& spec_s, const PulseSpec& spec_p,
                      const EnvelopeShape& shape_s, const EnvelopeShape& shape_p,
                      const EnvelopeGrid& grid);

// One Strang step: half nonlinear (exact pointwise exponential with frozen
// intensities, including loss), full linear (spectral advection + GVD),
// half nonlinear.
PulseState step(const PulseState& state, const SolverConfig& config,
                const DispersionPoint& disp_s, const DispersionPoint& disp_p,
                const OverlapTable& gamma, const MaterialParams& material);

// Integrates for the given duration and extracts the phase report from three
// runs: full, signal-removed, and linear reference. Aborts if a pulse wraps
// the periodic domain or the walk-off cannot fit.
std::pair<PulseState, PhaseReport> propagate(const PulseState& state,
                                             const SolverConfig& config,
                                             const DispersionPoint& disp_s,
                                             const DispersionPoint& disp_p,
                                             const OverlapTable& gamma,
                                             const MaterialParams& material,
                                             double duration);

// Detector-weighted phase integral: sum of eps0 |P|^2 phi dz, in J. For a
// probe much narrower than the phase profile this approaches
// N_p hbar omega_p * phi(center).
double detector_signal(const PulseState& final_state,
                       const std::vector<double>& phase_field);

// Delimited snapshot of both envelopes; see README for the column layout.
void write_snapshot(std::ostream& out, const PulseState& state);

}  // namespace kerrpcw

#endif  // KERRPCW_SOLVER_HPP
