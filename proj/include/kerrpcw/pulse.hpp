#ifndef KERRPCW_PULSE_HPP
#define KERRPCW_PULSE_HPP

#include <cmath>
#include <stdexcept>

#include "kerrpcw/constants.hpp"

namespace kerrpcw {

enum class WavevectorUnit { rad_per_m, pi_over_a };

// Bloch wavevector with an explicit unit tag. Band files work in pi/a while
// the solver works in rad/m; the tag keeps the two from silently mixing.
struct BlochWavevector {
  double value = 0.0;
  WavevectorUnit unit = WavevectorUnit::rad_per_m;

  double to_si(double lattice_period) const {
    switch (unit) {
      case WavevectorUnit::rad_per_m:
        return value;
      case WavevectorUnit::pi_over_a:
        return value * constants::pi / lattice_period;
    }
    throw std::logic_error("unknown wavevector unit");
  }
};

// Carrier of one pulse: vacuum wavelength, derived angular frequency, and
// the (band, k) point of the waveguide branch it rides on.
class CarrierSpec {
 public:
  CarrierSpec(double vacuum_wavelength_m, int band_index = 0,
              BlochWavevector k = {})
      : lambda_(vacuum_wavelength_m),
        omega_(2.0 * constants::pi * constants::c / vacuum_wavelength_m),
        band_index_(band_index),
        k_(k) {
    if (!(lambda_ > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  }

  static CarrierSpec from_angular_frequency(double omega_rad_per_s,
                                            int band_index = 0,
                                            BlochWavevector k = {}) {
    if (!(omega_rad_per_s > 0.0))
      throw std::invalid_argument("angular frequency must be > 0");
    return CarrierSpec(2.0 * constants::pi * constants::c / omega_rad_per_s,
                       band_index, k);
  }

  double vacuum_wavelength() const { return lambda_; }  // [m]
  double angular_frequency() const { return omega_; }   // [rad/s]
  int band_index() const { return band_index_; }
  const BlochWavevector& bloch_wavevector() const { return k_; }

  // omega and lambda are stored redundantly; they must agree to 1e-12.
  bool consistent() const {
    const double w = 2.0 * constants::pi * constants::c / lambda_;
    return std::abs(w - omega_) <= 1e-12 * w;
  }

 private:
  double lambda_;
  double omega_;
  int band_index_;
  BlochWavevector k_;
};

enum class StateKind { coherent, number };

// Pulse description for the feasibility chain and solver initialization.
// tau is the temporal width entering the effective length L_eff = v * tau;
// photon number is an expectation value, not an integer.
struct PulseSpec {
  CarrierSpec carrier;
  double temporal_width;  // [s]
  double photon_number;   // dimensionless mean
  StateKind state_kind = StateKind::coherent;

  PulseSpec(CarrierSpec c, double tau_s, double n_photons,
            StateKind kind = StateKind::coherent)
      : carrier(c), temporal_width(tau_s), photon_number(n_photons), state_kind(kind) {
    if (!(temporal_width > 0.0)) throw std::invalid_argument("pulse width must be > 0");
    if (!(photon_number >= 0.0)) throw std::invalid_argument("photon number must be >= 0");
  }

  // Pulse energy N hbar omega [J].
  double energy() const {
    return photon_number * constants::hbar * carrier.angular_frequency();
  }
};

}  // namespace kerrpcw

#endif  // KERRPCW_PULSE_HPP
