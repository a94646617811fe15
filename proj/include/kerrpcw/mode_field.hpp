#ifndef KERRPCW_MODE_FIELD_HPP
#define KERRPCW_MODE_FIELD_HPP

#include <complex>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace kerrpcw {

struct ModeFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Voxelized dielectric of one waveguide unit cell. epsilon is the relative
// permittivity (1 in air); epsilon_tilde is n^2 in material and exactly 0 in
// air, and weights the nonlinear overlap integrals. Voxels are stored x
// fastest, then y, then z; z is the propagation axis and spans one period a.
class DielectricGrid {
 public:
  static constexpr double air_tol = 1e-9;

  DielectricGrid(int nx, int ny, int nz, double dx, double dy, double dz,
                 double lattice_period_m, std::vector<double> epsilon,
                 std::vector<double> epsilon_tilde);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nz() const { return nz_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double dz() const { return dz_; }
  double lattice_period() const { return a_; }
  size_t voxel_count() const { return epsilon_.size(); }
  double voxel_volume() const { return dx_ * dy_ * dz_; }

  size_t index(int ix, int iy, int iz) const {
    return static_cast<size_t>((iz * ny_ + iy) * nx_ + ix);
  }
  double epsilon(size_t v) const { return epsilon_[v]; }
  double epsilon_tilde(size_t v) const { return eps_tilde_[v]; }
  const std::vector<double>& epsilon() const { return epsilon_; }
  const std::vector<double>& epsilon_tilde() const { return eps_tilde_; }

  bool same_layout(const DielectricGrid& other) const;

 private:
  int nx_, ny_, nz_;
  double dx_, dy_, dz_;
  double a_;
  std::vector<double> epsilon_;
  std::vector<double> eps_tilde_;
};

enum class NormalizationState { raw, normalized };

// Periodic part u(r) of one Bloch mode, sampled on a DielectricGrid. Three
// complex components per voxel, stored voxel-major: u[3*v + c]. Mode files
// carry raw fields; normalize() is the only way to reach the normalized state.
class BlochModeField {
 public:
  BlochModeField(int band_index, std::string k_tag,
                 std::vector<std::complex<double>> u,
                 NormalizationState state = NormalizationState::raw);

  int band_index() const { return band_index_; }
  const std::string& k_tag() const { return k_tag_; }
  NormalizationState state() const { return state_; }
  size_t voxel_count() const { return u_.size() / 3; }

  std::complex<double> component(size_t v, int c) const { return u_[3 * v + c]; }
  // |u|^2 summed over the three components at one voxel.
  double abs2(size_t v) const;
  const std::vector<std::complex<double>>& data() const { return u_; }

 private:
  int band_index_;
  std::string k_tag_;
  std::vector<std::complex<double>> u_;
  NormalizationState state_;
};

// Pairwise gammas (1/m^2) and mode volumes (m^3) for a set of modes, plus the
// dimensionless mirrors gamma*a^2 and V/a^3 that band-structure tools usually
// quote. Matrices are stored dense, row-major, and filled symmetrically from
// a single computation per pair.
struct OverlapTable {
  size_t n = 0;
  std::vector<double> gamma;        // n*n, 1/m^2
  std::vector<double> mode_volume;  // n*n, m^3
  std::vector<double> gamma_a2;     // gamma * a^2
  std::vector<double> volume_a3;    // mode_volume / a^3

  double gamma_at(size_t i, size_t j) const { return gamma[i * n + j]; }
  double volume_at(size_t i, size_t j) const { return mode_volume[i * n + j]; }
};

// Scales a raw mode to unit norm (1/a) * integral eps |u|^2 = 1. The applied
// scale factor (1/m units) is written to scale_out when given. Zero-norm
// fields are rejected.
BlochModeField normalize(const BlochModeField& mode, const DielectricGrid& grid,
                         double* scale_out = nullptr);

// |(1/a) * integral eps conj(u_a).u_b| over the cell. Near 1 for a normalized
// mode against itself, near 0 for distinct bands; bilinear in raw amplitudes,
// so no normalization requirement.
double check_orthogonality(const BlochModeField& mode_a, const BlochModeField& mode_b,
                           const DielectricGrid& grid);

// (1/a) * integral eps_tilde |u_a|^2 |u_b|^2, in 1/m^2. Both inputs must be
// normalized; a raw field here would silently come out at the wrong scale,
// which is exactly the bug this check exists to stop.
double gamma_overlap(const BlochModeField& mode_a, const BlochModeField& mode_b,
                     const DielectricGrid& grid);

// integral eps |u_a||u_b| divided by the maximum voxel value of the same
// integrand, in m^3. The self case reduces to the usual eps|u|^2 definition.
double mode_volume(const BlochModeField& mode_a, const BlochModeField& mode_b,
                   const DielectricGrid& grid);

// Normalizes every mode and fills both matrices pairwise.
OverlapTable compute_overlap_table(const std::vector<BlochModeField>& modes,
                                   const DielectricGrid& grid);

// Text container for one grid + one raw mode field; see README for the layout.
struct ModeFile {
  DielectricGrid grid;
  BlochModeField mode;
};

ModeFile load_mode_field(std::istream& in, const std::string& origin = "<stream>");
ModeFile load_mode_field(const std::filesystem::path& path);
void write_mode_field(std::ostream& out, const DielectricGrid& grid,
                      const BlochModeField& mode);

}  // namespace kerrpcw

#endif  // KERRPCW_MODE_FIELD_HPP
