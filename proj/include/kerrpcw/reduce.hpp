#ifndef KERRPCW_REDUCE_HPP
#define KERRPCW_REDUCE_HPP

#include <cstddef>
#include <span>

namespace kerrpcw {

// Pairwise summation with a fixed reduction tree. Deterministic for a given
// input order and O(log n) error growth instead of O(n) for naive left folds;
// all quadratures in the library route through this.
double pairwise_sum(std::span<const double> x);

}  // namespace kerrpcw

#endif  // KERRPCW_REDUCE_HPP
