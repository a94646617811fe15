#ifndef KERRPCW_CONSTANTS_HPP
#define KERRPCW_CONSTANTS_HPP

// Physical constants, CODATA 2018. All internal computation is SI;
// non-SI units exist only at I/O boundaries (see units.hpp).

namespace kerrpcw::constants {

// speed of light in vacuum [m/s] (exact)
inline constexpr double c = 299792458.0;

// reduced Planck constant [J s]
inline constexpr double hbar = 1.054571817e-34;

// vacuum permittivity [F/m]
inline constexpr double eps0 = 8.8541878128e-12;

inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace kerrpcw::constants

#endif  // KERRPCW_CONSTANTS_HPP
