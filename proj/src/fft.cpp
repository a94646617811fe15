#include "kerrpcw/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>
#include <stdexcept>

namespace kerrpcw {

namespace {
std::mutex planner_mutex;
}

SpectralTransform::SpectralTransform(size_t n) : n_(n) {
  if (n_ == 0) throw std::invalid_argument("transform size must be positive");
  // Plan on a scratch buffer; FFTW_UNALIGNED lets us execute on any
  // caller buffer later via the new-array interface.
  std::vector<std::complex<double>> scratch(n_);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard<std::mutex> lock(planner_mutex);
  fwd_ = fftw_plan_dft_1d(static_cast<int>(n_), ptr, ptr, FFTW_FORWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_1d(static_cast<int>(n_), ptr, ptr, FFTW_BACKWARD,
                          FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void SpectralTransform::forward(std::vector<std::complex<double>>& data) const {
  if (data.size() != n_) {
    throw std::invalid_argument("transform size mismatch: planned " + std::to_string(n_) +
                                ", got " + std::to_string(data.size()));
  }
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), ptr, ptr);
}

void SpectralTransform::inverse(std::vector<std::complex<double>>& data) const {
  if (data.size() != n_) {
    throw std::invalid_argument("transform size mismatch: planned " + std::to_string(n_) +
                                ", got " + std::to_string(data.size()));
  }
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), ptr, ptr);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& z : data) z *= scale;
}

std::vector<double> SpectralTransform::wavenumbers(size_t n, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("domain length must be positive");
  std::vector<double> q(n);
  const double dq = 2.0 * std::numbers::pi / length;
  const long long half = static_cast<long long>(n) / 2;
  for (size_t j = 0; j < n; ++j) {
    const long long jj = static_cast<long long>(j);
    q[j] = dq * static_cast<double>(jj < half ? jj : jj - static_cast<long long>(n));
  }
  return q;
}

}  // namespace kerrpcw
