// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace translab {

/// Height field u(x_i, y_j) on a uniform rectangular grid. Storage is
/// y-fastest: values[i * ny + j].
struct GridFunction {
  int nx = 0;
  int ny = 0;
  double hx = 0.0;
  double hy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::vector<double> values;

  double x(int i) const { return x0 + i * hx; }
  double y(int j) const { return y0 + j * hy; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }
  double& operator()(int i, int j) { return values[index(i, j)]; }
  double operator()(int i, int j) const { return values[index(i, j)]; }
  std::size_t size() const { return values.size(); }

  /// Throws InvalidArgument / NonFinite when the invariants do not hold.
  void validate() const;

  bool same_grid(const GridFunction& other, double rel_tol = 1e-12) const;

  /// Grid sharing the geometry of `like`, filled with `fill`.
  static GridFunction like(const GridFunction& like, double fill = 0.0);

  /// Grid on [x0, x0 + (nx-1) hx] x [y0, y0 + (ny-1) hy] sampled from f.
  static GridFunction sample(int nx, int ny, double x0, double y0, double hx, double hy,
                             const std::function<double(double, double)>& f);

  /// Grid symmetric about the origin with half extents (ax, ay); node
  /// coordinates are computed so that x(i) == -x(nx-1-i) exactly.
  static GridFunction centered(int nx, int ny, double ax, double ay,
                               const std::function<double(double, double)>& f);
};

/// Per-node scalar carrier aligned with a grid (nx*ny, same ordering) or a
/// radial profile (ny == 1). Undefined nodes hold NaN.
struct ScalarField {
  int nx = 0;
  int ny = 0;
  std::vector<double> values;

  static ScalarField undefined(int nx, int ny) {
    return {nx, ny, std::vector<double>(static_cast<std::size_t>(nx) * ny,
                                        std::numeric_limits<double>::quiet_NaN())};
  }
  static ScalarField like(const GridFunction& g, double fill) {
    return {g.nx, g.ny, std::vector<double>(g.size(), fill)};
  }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }
  double& operator()(int i, int j) { return values[index(i, j)]; }
  double operator()(int i, int j) const { return values[index(i, j)]; }
  bool aligned_with(const GridFunction& g) const {
    return nx == g.nx && ny == g.ny && values.size() == g.size();
  }
};

/// Second-order jet of a height function at one point.
struct Jet {
  double u = 0.0;
  double ux = 0.0;
  double uy = 0.0;
  double uxx = 0.0;
  double uxy = 0.0;
  double uyy = 0.0;
};

/// Central-difference jet at an interior node (9-point stencil).
Jet central_jet(const GridFunction& g, int i, int j);

/// Same stencil applied to an arbitrary aligned scalar field.
Jet central_jet(const ScalarField& f, const GridFunction& g, int i, int j);

/// Axis-aligned rectangle in the (x, y) parameter plane.
struct Region {
  double xmin = 0.0;
  double xmax = 0.0;
  double ymin = 0.0;
  double ymax = 0.0;

  bool contains(double x, double y) const {
    return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
  }
  static Region everything() {
    const double inf = std::numeric_limits<double>::infinity();
    return {-inf, inf, -inf, inf};
  }
};

}  // namespace translab
