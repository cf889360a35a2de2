// SPDX-License-Identifier: Apache-2.0
#include "translab/grid.hpp"

#include <cmath>
#include <string>

#include "translab/errors.hpp"

namespace translab {

void GridFunction::validate() const {
  require(nx >= 3 && ny >= 3, ErrorCode::InvalidArgument,
          "grid needs at least 3x3 nodes, got " + std::to_string(nx) + "x" + std::to_string(ny));
  require(hx > 0.0 && hy > 0.0, ErrorCode::InvalidArgument, "grid spacings must be positive");
  require(values.size() == static_cast<std::size_t>(nx) * ny, ErrorCode::ShapeMismatch,
          "value count does not match nx*ny");
  for (double v : values) require(std::isfinite(v), ErrorCode::NonFinite, "grid value is not finite");
}

bool GridFunction::same_grid(const GridFunction& o, double rel_tol) const {
  auto close = [rel_tol](double a, double b, double scale) {
    return std::abs(a - b) <= rel_tol * std::max(1.0, scale);
  };
  return nx == o.nx && ny == o.ny && close(hx, o.hx, hx) && close(hy, o.hy, hy) &&
         close(x0, o.x0, std::abs(x0) + hx) && close(y0, o.y0, std::abs(y0) + hy);
}

GridFunction GridFunction::like(const GridFunction& g, double fill) {
  GridFunction out = g;
  out.values.assign(g.size(), fill);
  return out;
}

GridFunction GridFunction::sample(int nx, int ny, double x0, double y0, double hx, double hy,
                                  const std::function<double(double, double)>& f) {
  GridFunction g{nx, ny, hx, hy, x0, y0, {}};
  g.values.resize(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) g(i, j) = f(g.x(i), g.y(j));
  return g;
}

GridFunction GridFunction::centered(int nx, int ny, double ax, double ay,
                                    const std::function<double(double, double)>& f) {
  require(nx >= 3 && ny >= 3, ErrorCode::InvalidArgument, "centered grid needs >= 3x3 nodes");
  const double hx = 2.0 * ax / (nx - 1);
  const double hy = 2.0 * ay / (ny - 1);
  GridFunction g{nx, ny, hx, hy, -ax, -ay, {}};
  g.values.resize(static_cast<std::size_t>(nx) * ny);
  // Mirror-exact coordinates: evaluate at (i - c) * h instead of x0 + i*h.
  const double cx = 0.5 * (nx - 1);
  const double cy = 0.5 * (ny - 1);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) g(i, j) = f((i - cx) * hx, (j - cy) * hy);
  return g;
}

namespace {

template <typename At>
Jet stencil_jet(const At& at, double hx, double hy) {
  const double c = at(0, 0);
  const double e = at(1, 0), w = at(-1, 0);
  const double n = at(0, 1), s = at(0, -1);
  Jet jet;
  jet.u = c;
  jet.ux = (e - w) / (2.0 * hx);
  jet.uy = (n - s) / (2.0 * hy);
  jet.uxx = (e - 2.0 * c + w) / (hx * hx);
  jet.uyy = (n - 2.0 * c + s) / (hy * hy);
  jet.uxy = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hx * hy);
  return jet;
}

}  // namespace

Jet central_jet(const GridFunction& g, int i, int j) {
  return stencil_jet([&](int a, int b) { return g(i + a, j + b); }, g.hx, g.hy);
}

Jet central_jet(const ScalarField& f, const GridFunction& g, int i, int j) {
  return stencil_jet([&](int a, int b) { return f(i + a, j + b); }, g.hx, g.hy);
}

}  // namespace translab
