// Copyright the ednse authors.
// SPDX-License-Identifier: Apache-2.0

#include "ednse/grid.hpp"

#include <cmath>
#include <string>

#include "ednse/error.hpp"

namespace ednse {

void GridSpec::validate() const {
  if (n <= 0 || n % 2 != 0) {
    throw InvalidArgument("grid: n must be a positive even integer, got " + std::to_string(n));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw InvalidArgument("grid: box_length must be positive and finite");
  }
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw InvalidArgument("grid: dealias_fraction must lie in (0, 1]");
  }
}

double GridSpec::max_wavenumber() const {
  return k_unit() * (n / 2) * std::sqrt(3.0);
}

}  // namespace ednse
