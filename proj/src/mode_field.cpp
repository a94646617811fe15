#include "kerrpcw/mode_field.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "kerrpcw/reduce.hpp"
#include "text_util.hpp"

namespace kerrpcw {

namespace {

using detail::trim;

constexpr const char* kColumnHeader =
    "eps, mask, re_ux, im_ux, re_uy, im_uy, re_uz, im_uz";

void require_same_size(const BlochModeField& mode, const DielectricGrid& grid,
                       const char* op) {
  if (mode.voxel_count() != grid.voxel_count()) {
    throw std::invalid_argument(std::string(op) + ": mode has " +
                                std::to_string(mode.voxel_count()) + " voxels but grid has " +
                                std::to_string(grid.voxel_count()));
  }
}

void require_normalized(const BlochModeField& mode, const char* op) {
  if (mode.state() != NormalizationState::normalized) {
    throw std::invalid_argument(std::string(op) +
                                ": mode field must be normalized first (band " +
                                std::to_string(mode.band_index()) + " is raw)");
  }
}

// (1/a) * integral eps |u|^2 over the cell.
double paper_norm(const BlochModeField& mode, const DielectricGrid& grid) {
  std::vector<double> terms(grid.voxel_count());
  for (size_t v = 0; v < terms.size(); ++v) {
    terms[v] = grid.epsilon(v) * mode.abs2(v);
  }
  return pairwise_sum(terms) * grid.voxel_volume() / grid.lattice_period();
}

}  // namespace

DielectricGrid::DielectricGrid(int nx, int ny, int nz, double dx, double dy, double dz,
                               double lattice_period_m, std::vector<double> epsilon,
                               std::vector<double> epsilon_tilde)
    : nx_(nx), ny_(ny), nz_(nz), dx_(dx), dy_(dy), dz_(dz), a_(lattice_period_m),
      epsilon_(std::move(epsilon)), eps_tilde_(std::move(epsilon_tilde)) {
  if (nx_ < 1 || ny_ < 1 || nz_ < 1) {
    throw std::invalid_argument("grid dimensions must be positive");
  }
  if (!(dx_ > 0.0) || !(dy_ > 0.0) || !(dz_ > 0.0)) {
    throw std::invalid_argument("voxel size must be positive on every axis");
  }
  if (!(a_ > 0.0)) {
    throw std::invalid_argument("lattice period must be positive");
  }
  const size_t nvox = static_cast<size_t>(nx_) * ny_ * nz_;
  if (epsilon_.size() != nvox || eps_tilde_.size() != nvox) {
    throw std::invalid_argument("dielectric fields must have nx*ny*nz = " +
                                std::to_string(nvox) + " entries");
  }
  if (std::abs(nz_ * dz_ - a_) > dz_) {
    throw std::invalid_argument("cell z-extent nz*dz = " + std::to_string(nz_ * dz_) +
                                " does not match lattice period a = " + std::to_string(a_));
  }
  for (size_t v = 0; v < nvox; ++v) {
    const double e = epsilon_[v];
    const double m = eps_tilde_[v];
    if (!std::isfinite(e) || e < 1.0 - air_tol) {
      throw std::invalid_argument("epsilon must be >= 1 everywhere; voxel " +
                                  std::to_string(v) + " has " + std::to_string(e));
    }
    if (!std::isfinite(m) || m < 0.0) {
      throw std::invalid_argument("material mask must be >= 0; voxel " + std::to_string(v) +
                                  " has " + std::to_string(m));
    }
    const bool air = e <= 1.0 + air_tol;
    const bool masked_out = m <= air_tol;
    if (air != masked_out) {
      throw std::invalid_argument(
          "material mask must vanish exactly in air (epsilon = 1); voxel " +
          std::to_string(v) + " has epsilon " + std::to_string(e) + ", mask " +
          std::to_string(m));
    }
  }
}

bool DielectricGrid::same_layout(const DielectricGrid& other) const {
  if (nx_ != other.nx_ || ny_ != other.ny_ || nz_ != other.nz_) return false;
  if (dx_ != other.dx_ || dy_ != other.dy_ || dz_ != other.dz_) return false;
  if (a_ != other.a_) return false;
  for (size_t v = 0; v < epsilon_.size(); ++v) {
    if (std::abs(epsilon_[v] - other.epsilon_[v]) > 1e-9) return false;
    if (std::abs(eps_tilde_[v] - other.eps_tilde_[v]) > 1e-9) return false;
  }
  return true;
}

BlochModeField::BlochModeField(int band_index, std::string k_tag,
                               std::vector<std::complex<double>> u,
                               NormalizationState state)
    : band_index_(band_index), k_tag_(std::move(k_tag)), u_(std::move(u)), state_(state) {
  if (band_index_ < 1) {
    throw std::invalid_argument("band index must be >= 1, got " +
                                std::to_string(band_index_));
  }
  if (u_.empty() || u_.size() % 3 != 0) {
    throw std::invalid_argument("mode field needs 3 complex components per voxel, got " +
                                std::to_string(u_.size()) + " values");
  }
  for (const auto& z : u_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("mode field contains non-finite values");
    }
  }
}

double BlochModeField::abs2(size_t v) const {
  return std::norm(u_[3 * v]) + std::norm(u_[3 * v + 1]) + std::norm(u_[3 * v + 2]);
}

BlochModeField normalize(const BlochModeField& mode, const DielectricGrid& grid,
                         double* scale_out) {
  require_same_size(mode, grid, "normalize");
  const double norm = paper_norm(mode, grid);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero-norm mode field (band " +
                                std::to_string(mode.band_index()) + ")");
  }
  const double scale = 1.0 / std::sqrt(norm);
  std::vector<std::complex<double>> u = mode.data();
  for (auto& z : u) z *= scale;
  BlochModeField out(mode.band_index(), mode.k_tag(), std::move(u),
                     NormalizationState::normalized);
  const double check = paper_norm(out, grid);
  if (std::abs(check - 1.0) > 1e-6) {
    throw std::runtime_error("normalization did not converge: residual norm " +
                             std::to_string(check));
  }
  if (scale_out) *scale_out = scale;
  return out;
}

double check_orthogonality(const BlochModeField& mode_a, const BlochModeField& mode_b,
                           const DielectricGrid& grid) {
  require_same_size(mode_a, grid, "check_orthogonality");
  require_same_size(mode_b, grid, "check_orthogonality");
  const size_t nvox = grid.voxel_count();
  std::vector<double> re(nvox), im(nvox);
  for (size_t v = 0; v < nvox; ++v) {
    std::complex<double> dot = 0.0;
    for (int c = 0; c < 3; ++c) {
      dot += std::conj(mode_a.component(v, c)) * mode_b.component(v, c);
    }
    dot *= grid.epsilon(v);
    re[v] = dot.real();
    im[v] = dot.imag();
  }
  const std::complex<double> total(pairwise_sum(re), pairwise_sum(im));
  return std::abs(total) * grid.voxel_volume() / grid.lattice_period();
}

double gamma_overlap(const BlochModeField& mode_a, const BlochModeField& mode_b,
                     const DielectricGrid& grid) {
  require_normalized(mode_a, "gamma_overlap");
  require_normalized(mode_b, "gamma_overlap");
  require_same_size(mode_a, grid, "gamma_overlap");
  require_same_size(mode_b, grid, "gamma_overlap");
  const size_t nvox = grid.voxel_count();
  std::vector<double> terms(nvox);
  for (size_t v = 0; v < nvox; ++v) {
    terms[v] = grid.epsilon_tilde(v) * mode_a.abs2(v) * mode_b.abs2(v);
  }
  return pairwise_sum(terms) * grid.voxel_volume() / grid.lattice_period();
}

double mode_volume(const BlochModeField& mode_a, const BlochModeField& mode_b,
                   const DielectricGrid& grid) {
  require_normalized(mode_a, "mode_volume");
  require_normalized(mode_b, "mode_volume");
  require_same_size(mode_a, grid, "mode_volume");
  require_same_size(mode_b, grid, "mode_volume");
  const size_t nvox = grid.voxel_count();
  std::vector<double> q(nvox);
  double qmax = 0.0;
  for (size_t v = 0; v < nvox; ++v) {
    q[v] = grid.epsilon(v) * std::sqrt(mode_a.abs2(v)) * std::sqrt(mode_b.abs2(v));
    if (q[v] > qmax) qmax = q[v];
  }
  if (qmax <= 0.0) {
    throw std::domain_error("mode volume undefined: integrand vanishes everywhere");
  }
  return pairwise_sum(q) * grid.voxel_volume() / qmax;
}

OverlapTable compute_overlap_table(const std::vector<BlochModeField>& modes,
                                   const DielectricGrid& grid) {
  OverlapTable table;
  table.n = modes.size();
  const size_t n = table.n;
  table.gamma.assign(n * n, 0.0);
  table.mode_volume.assign(n * n, 0.0);
  table.gamma_a2.assign(n * n, 0.0);
  table.volume_a3.assign(n * n, 0.0);

  std::vector<BlochModeField> norm_modes;
  norm_modes.reserve(n);
  for (const auto& m : modes) norm_modes.push_back(normalize(m, grid));

  const double a = grid.lattice_period();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) {
      const double g = gamma_overlap(norm_modes[i], norm_modes[j], grid);
      const double vol = mode_volume(norm_modes[i], norm_modes[j], grid);
      table.gamma[i * n + j] = table.gamma[j * n + i] = g;
      table.mode_volume[i * n + j] = table.mode_volume[j * n + i] = vol;
      table.gamma_a2[i * n + j] = table.gamma_a2[j * n + i] = g * a * a;
      table.volume_a3[i * n + j] = table.volume_a3[j * n + i] = vol / (a * a * a);
    }
  }
  return table;
}

namespace {

double parse_field(const std::string& field, const std::string& origin, int line) {
  double v = 0.0;
  if (!detail::try_parse_double(field, &v)) {
    throw ModeFileError(origin + ":" + std::to_string(line) + ": bad numeric value '" +
                        trim(field) + "'");
  }
  return v;
}

}  // namespace

ModeFile load_mode_field(std::istream& in, const std::string& origin) {
  std::optional<std::array<int, 3>> dims;
  std::optional<std::array<double, 3>> voxel;
  std::optional<double> a;
  std::optional<int> band_index;
  std::string k_tag;
  bool header_seen = false;

  std::vector<double> eps, mask;
  std::vector<std::complex<double>> u;
  size_t nvox = 0;

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;

    if (t[0] == '#') {
      const std::string body = trim(t.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = trim(body.substr(0, eq));
      const std::string val = trim(body.substr(eq + 1));
      const std::string loc = origin + ":" + std::to_string(lineno);
      if (key == "dims") {
        std::istringstream iss(val);
        std::array<int, 3> d{};
        if (!(iss >> d[0] >> d[1] >> d[2]) || !(iss >> std::ws).eof() || d[0] < 1 ||
            d[1] < 1 || d[2] < 1) {
          throw ModeFileError(loc + ": dims must be three positive integers, got '" + val +
                              "'");
        }
        dims = d;
      } else if (key == "voxel") {
        std::istringstream iss(val);
        std::array<double, 3> vx{};
        std::string unit;
        if (!(iss >> vx[0] >> vx[1] >> vx[2] >> unit) || !(iss >> std::ws).eof() ||
            unit != "m" || !(vx[0] > 0.0) || !(vx[1] > 0.0) || !(vx[2] > 0.0)) {
          throw ModeFileError(loc +
                              ": voxel must be three positive sizes in meters, e.g. "
                              "'# voxel = 2.5e-8 2.5e-8 2.5e-8 m'");
        }
        voxel = vx;
      } else if (key == "a") {
        const auto sp = val.find_last_of(" \t");
        if (sp == std::string::npos || trim(val.substr(sp + 1)) != "m") {
          throw ModeFileError(loc + ": lattice period must be given in meters");
        }
        const double v = parse_field(val.substr(0, sp), origin, lineno);
        if (!(v > 0.0)) throw ModeFileError(loc + ": lattice period must be positive");
        a = v;
      } else if (key == "band") {
        const double v = parse_field(val, origin, lineno);
        const int m = static_cast<int>(v);
        if (v != static_cast<double>(m) || m < 1) {
          throw ModeFileError(loc + ": band index must be a positive integer");
        }
        band_index = m;
      } else if (key == "k") {
        k_tag = val;
      }
      continue;
    }

    if (!header_seen) {
      if (t != kColumnHeader) {
        throw ModeFileError(origin + ":" + std::to_string(lineno) + ": expected header '" +
                            kColumnHeader + "', got '" + t + "'");
      }
      if (!dims || !voxel || !a || !band_index) {
        throw ModeFileError(origin + ":" + std::to_string(lineno) +
                            ": dims, voxel, a and band metadata must appear before the "
                            "column header");
      }
      nvox = static_cast<size_t>((*dims)[0]) * (*dims)[1] * (*dims)[2];
      if (nvox > 100'000'000) {
        throw ModeFileError(origin + ": grid of " + std::to_string(nvox) +
                            " voxels is implausibly large");
      }
      eps.reserve(nvox);
      mask.reserve(nvox);
      u.reserve(3 * nvox);
      header_seen = true;
      continue;
    }

    if (eps.size() == nvox) {
      throw ModeFileError(origin + ":" + std::to_string(lineno) +
                          ": more voxel rows than dims declare (" + std::to_string(nvox) +
                          ")");
    }
    const auto fields = detail::split(t, ',');
    if (fields.size() != 8) {
      throw ModeFileError(origin + ":" + std::to_string(lineno) + ": expected 8 columns, got " +
                          std::to_string(fields.size()));
    }
    double vals[8];
    for (int i = 0; i < 8; ++i) vals[i] = parse_field(fields[i], origin, lineno);
    eps.push_back(vals[0]);
    mask.push_back(vals[1]);
    u.emplace_back(vals[2], vals[3]);
    u.emplace_back(vals[4], vals[5]);
    u.emplace_back(vals[6], vals[7]);
  }

  if (!header_seen) {
    throw ModeFileError(origin + ": missing '" + std::string(kColumnHeader) + "' header");
  }
  if (eps.size() != nvox) {
    throw ModeFileError(origin + ": expected " + std::to_string(nvox) + " voxel rows, got " +
                        std::to_string(eps.size()));
  }

  try {
    DielectricGrid grid((*dims)[0], (*dims)[1], (*dims)[2], (*voxel)[0], (*voxel)[1],
                        (*voxel)[2], *a, std::move(eps), std::move(mask));
    BlochModeField mode(*band_index, k_tag, std::move(u), NormalizationState::raw);
    return ModeFile{std::move(grid), std::move(mode)};
  } catch (const std::invalid_argument& e) {
    throw ModeFileError(origin + ": " + e.what());
  }
}

ModeFile load_mode_field(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ModeFileError("cannot open mode file: " + path.string());
  }
  return load_mode_field(in, path.string());
}

void write_mode_field(std::ostream& out, const DielectricGrid& grid,
                      const BlochModeField& mode) {
  require_same_size(mode, grid, "write_mode_field");
  std::ostringstream ss;
  ss.precision(std::numeric_limits<double>::max_digits10);
  ss << "# dims = " << grid.nx() << " " << grid.ny() << " " << grid.nz() << "\n";
  ss << "# voxel = " << grid.dx() << " " << grid.dy() << " " << grid.dz() << " m\n";
  ss << "# a = " << grid.lattice_period() << " m\n";
  ss << "# band = " << mode.band_index() << "\n";
  if (!mode.k_tag().empty()) ss << "# k = " << mode.k_tag() << "\n";
  ss << kColumnHeader << "\n";
  for (size_t v = 0; v < grid.voxel_count(); ++v) {
    ss << grid.epsilon(v) << ", " << grid.epsilon_tilde(v);
    for (int c = 0; c < 3; ++c) {
      const auto z = mode.component(v, c);
      ss << ", " << z.real() << ", " << z.imag();
    }
    ss << "\n";
  }
  out << ss.str();
}

}  // namespace kerrpcw
