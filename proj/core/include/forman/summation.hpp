#pragma once

#include <cstddef>
#include <span>

namespace forman {

// Pairwise (cascade) summation with a fixed split rule, so the reduction tree
// depends only on the length of the input. Error grows as O(log n).
inline double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 8;
  if (values.size() <= kLeaf) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace forman
