#ifndef KERRPCW_FFT_HPP
#define KERRPCW_FFT_HPP

#include <complex>
#include <vector>

namespace kerrpcw {

// Thin FFTW wrapper for the split-step solver: forward/inverse 1-D complex
// transforms of a fixed size, executed on caller-owned buffers. Planning is
// serialized internally (FFTW planning is not thread-safe); execution on
// distinct buffers is safe to run concurrently, which the sweep runner relies
// on. Inverse includes the 1/n factor.
class SpectralTransform {
 public:
  explicit SpectralTransform(size_t n);
  ~SpectralTransform();

  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  size_t size() const { return n_; }

  void forward(std::vector<std::complex<double>>& data) const;
  void inverse(std::vector<std::complex<double>>& data) const;

  // Angular spatial frequencies q_j = 2*pi*j/length in FFT storage order
  // (non-negative first, then negative; Nyquist stored negative).
  static std::vector<double> wavenumbers(size_t n, double length);

 private:
  size_t n_;
  void* fwd_;  // fftw_plan, kept out of the public header
  void* bwd_;
};

}  // namespace kerrpcw

#endif  // KERRPCW_FFT_HPP
