// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "translab/geom.hpp"
#include "translab/grid.hpp"

namespace translab::test {

inline double max_abs_finite(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values)
    if (std::isfinite(v)) m = std::max(m, std::abs(v));
  return m;
}

/// max |f - g| over nodes where the field is finite.
inline double max_error(const ScalarField& f, const GridFunction& u, const std::function<double(double, double)>& g) {
  double m = 0.0;
  for (int i = 0; i < u.nx; ++i)
    for (int j = 0; j < u.ny; ++j)
      if (std::isfinite(f(i, j))) m = std::max(m, std::abs(f(i, j) - g(u.x(i), u.y(j))));
  return m;
}


}  // namespace translab::test
