#ifndef KERRPCW_MATERIAL_HPP
#define KERRPCW_MATERIAL_HPP

#include <stdexcept>
#include <string>

#include "kerrpcw/constants.hpp"
#include "kerrpcw/units.hpp"

namespace kerrpcw {

// Optical material parameters, stored SI. Constructors accept the common
// literature units (cm^2/W, 1/cm, cm/GW); everything downstream is SI.
class MaterialParams {
 public:
  // All-SI constructor. n2 may be negative (InGaAsP); alpha2 = 0 models the
  // long-wavelength probe regime where two-photon absorption vanishes.
  MaterialParams(std::string name, double n, double n2_m2_per_W,
                 double alpha1_per_m, double alpha2_m_per_W)
      : name_(std::move(name)),
        n_(n),
        n2_(n2_m2_per_W),
        alpha1_(alpha1_per_m),
        alpha2_(alpha2_m_per_W) {
    if (!(n_ >= 1.0)) throw std::invalid_argument("refractive index must be >= 1");
    if (!(alpha1_ >= 0.0)) throw std::invalid_argument("linear loss must be >= 0");
    if (!(alpha2_ >= 0.0)) throw std::invalid_argument("two-photon loss must be >= 0");
  }

  static MaterialParams from_common_units(std::string name, double n,
                                          double n2_cm2_per_W, double alpha1_per_cm,
                                          double alpha2_cm_per_GW) {
    using units::Unit;
    return MaterialParams(
        std::move(name), n,
        units::convert_units(n2_cm2_per_W, Unit::cm2_per_W, Unit::m2_per_W),
        units::convert_units(alpha1_per_cm, Unit::per_cm, Unit::per_m),
        units::convert_units(alpha2_cm_per_GW, Unit::cm_per_GW, Unit::m_per_W));
  }

  const std::string& name() const { return name_; }
  double refractive_index() const { return n_; }
  double kerr_index() const { return n2_; }        // [m^2/W]
  double linear_loss() const { return alpha1_; }   // [1/m]
  double two_photon_loss() const { return alpha2_; }  // [m/W]

  // Real part of the third-order susceptibility, from 3*chi3 = c n^2 n2.
  double chi3_real() const { return constants::c * n_ * n_ * n2_ / 3.0; }

 private:
  std::string name_;
  double n_;
  double n2_;
  double alpha1_;
  double alpha2_;
};

// Nonlinear coupling scale kappa = c eps0 n2. Sign follows n2.
inline double kappa(const MaterialParams& m) {
  return constants::c * constants::eps0 * m.kerr_index();
}

}  // namespace kerrpcw

#endif  // KERRPCW_MATERIAL_HPP
