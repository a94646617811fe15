#include "kerrpcw/reduce.hpp"

namespace kerrpcw {

double pairwise_sum(std::span<const double> x) {
  const size_t n = x.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const size_t half = n / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace kerrpcw
