#pragma once

#include <cmath>
#include <cstddef>

#include "ifi/hard_instance.hpp"
#include "ifi/rational.hpp"

namespace ifi {

/// log2(m!) as the exact sum of log2(i), i = 2..m.
inline double log2_factorial(std::size_t m) {
  long double sum = 0.0L;
  for (std::size_t i = 2; i <= m; ++i) sum += std::log2(static_cast<long double>(i));
  return static_cast<double>(sum);
}

/// Bits carried by the hidden permutations of a (d, eps) instance: K^2 log2(m!).
inline double entropy_bits(std::size_t d, const Rational& eps) {
  const auto layout = block_layout(d, eps);
  return static_cast<double>(layout.blocks * layout.blocks) * log2_factorial(layout.m);
}

}  // namespace ifi
