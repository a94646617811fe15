#ifndef KERRPCW_UNITS_HPP
#define KERRPCW_UNITS_HPP

#include <stdexcept>
#include <string>

namespace kerrpcw::units {

// Unit tags for boundary conversions. Factors to the SI base of each
// dimension are exact powers of ten, documented next to each tag.
enum class Unit {
  // intensity-dependent index [m^2/W]
  m2_per_W,   // 1
  cm2_per_W,  // 1e-4

  // two-photon absorption [m/W]
  m_per_W,    // 1
  cm_per_GW,  // 1e-11  (1e-2 m per 1e9 W)

  // linear loss [1/m]
  per_m,   // 1
  per_cm,  // 1e2

  // length [m]
  m,   // 1
  cm,  // 1e-2
  mm,  // 1e-3
  um,  // 1e-6
  nm,  // 1e-9

  // energy [J]
  J,   // 1
  kJ,  // 1e3
  mJ,  // 1e-3
  uJ,  // 1e-6
  nJ,  // 1e-9

  // time [s]
  s,   // 1
  ns,  // 1e-9
  ps,  // 1e-12
  fs,  // 1e-15

  // area [m^2]
  m2,   // 1
  um2,  // 1e-12
  nm2,  // 1e-18
};

enum class Dimension {
  intensity_index,
  two_photon_loss,
  linear_loss,
  length,
  energy,
  time,
  area,
};

struct UnitError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Dimension dimension_of(Unit u);
double si_factor(Unit u);
std::string unit_name(Unit u);

// Exact conversion by factor. Incompatible dimensions are rejected.
double convert_units(double value, Unit from, Unit to);

}  // namespace kerrpcw::units

#endif  // KERRPCW_UNITS_HPP
