#pragma once

#include <vector>

#include "heaplab/common.hpp"

namespace heaplab {

/// Γ-set of rational functions on an indexed split domain: value(c, s).
struct WeightFunction {
  int num_colors = 0;
  int num_splits = 0;
  std::vector<Rational> values;  // color-major

  WeightFunction() = default;
  WeightFunction(int colors, int splits)
      : num_colors(colors), num_splits(splits), values(static_cast<std::size_t>(colors) * splits) {}

  Rational& at(ColorId c, int s) { return values[static_cast<std::size_t>(c) * num_splits + s]; }
  const Rational& at(ColorId c, int s) const {
    return values[static_cast<std::size_t>(c) * num_splits + s];
  }

  friend bool operator==(const WeightFunction&, const WeightFunction&) = default;
};

}  // namespace heaplab
