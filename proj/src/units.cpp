#include "kerrpcw/units.hpp"

namespace kerrpcw::units {

Dimension dimension_of(Unit u) {
  switch (u) {
    case Unit::m2_per_W:
    case Unit::cm2_per_W:
      return Dimension::intensity_index;
    case Unit::m_per_W:
    case Unit::cm_per_GW:
      return Dimension::two_photon_loss;
    case Unit::per_m:
    case Unit::per_cm:
      return Dimension::linear_loss;
    case Unit::m:
    case Unit::cm:
    case Unit::mm:
    case Unit::um:
    case Unit::nm:
      return Dimension::length;
    case Unit::J:
    case Unit::kJ:
    case Unit::mJ:
    case Unit::uJ:
    case Unit::nJ:
      return Dimension::energy;
    case Unit::s:
    case Unit::ns:
    case Unit::ps:
    case Unit::fs:
      return Dimension::time;
    case Unit::m2:
    case Unit::um2:
    case Unit::nm2:
      return Dimension::area;
  }
  throw UnitError("unknown unit tag");
}

double si_factor(Unit u) {
  switch (u) {
    case Unit::m2_per_W: return 1.0;
    case Unit::cm2_per_W: return 1e-4;
    case Unit::m_per_W: return 1.0;
    case Unit::cm_per_GW: return 1e-11;
    case Unit::per_m: return 1.0;
    case Unit::per_cm: return 1e2;
    case Unit::m: return 1.0;
    case Unit::cm: return 1e-2;
    case Unit::mm: return 1e-3;
    case Unit::um: return 1e-6;
    case Unit::nm: return 1e-9;
    case Unit::J: return 1.0;
    case Unit::kJ: return 1e3;
    case Unit::mJ: return 1e-3;
    case Unit::uJ: return 1e-6;
    case Unit::nJ: return 1e-9;
    case Unit::s: return 1.0;
    case Unit::ns: return 1e-9;
    case Unit::ps: return 1e-12;
    case Unit::fs: return 1e-15;
    case Unit::m2: return 1.0;
    case Unit::um2: return 1e-12;
    case Unit::nm2: return 1e-18;
  }
  throw UnitError("unknown unit tag");
}

std::string unit_name(Unit u) {
  switch (u) {
    case Unit::m2_per_W: return "m^2/W";
    case Unit::cm2_per_W: return "cm^2/W";
    case Unit::m_per_W: return "m/W";
    case Unit::cm_per_GW: return "cm/GW";
    case Unit::per_m: return "1/m";
    case Unit::per_cm: return "1/cm";
    case Unit::m: return "m";
    case Unit::cm: return "cm";
    case Unit::mm: return "mm";
    case Unit::um: return "um";
    case Unit::nm: return "nm";
    case Unit::J: return "J";
    case Unit::kJ: return "kJ";
    case Unit::mJ: return "mJ";
    case Unit::uJ: return "uJ";
    case Unit::nJ: return "nJ";
    case Unit::s: return "s";
    case Unit::ns: return "ns";
    case Unit::ps: return "ps";
    case Unit::fs: return "fs";
    case Unit::m2: return "m^2";
    case Unit::um2: return "um^2";
    case Unit::nm2: return "nm^2";
  }
  return "?";
}

double convert_units(double value, Unit from, Unit to) {
  if (dimension_of(from) != dimension_of(to)) {
    throw UnitError("incompatible dimensions: cannot convert " + unit_name(from) +
                    " to " + unit_name(to));
  }
  if (from == to) return value;
  return value * (si_factor(from) / si_factor(to));
}

}  // namespace kerrpcw::units
