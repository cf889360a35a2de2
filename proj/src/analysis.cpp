// SPDX-License-Identifier: Apache-2.0
#include "translab/analysis.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "translab/errors.hpp"
#include "translab/numerics.hpp"

namespace translab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double cell_integrand(const GridFunction& u, int i, int j) {
  const double u00 = u(i, j), u10 = u(i + 1, j), u01 = u(i, j + 1), u11 = u(i + 1, j + 1);
  const double um = 0.25 * (u00 + u10 + u01 + u11);
  const double p = 0.5 * ((u10 - u00) + (u11 - u01)) / u.hx;
  const double q = 0.5 * ((u01 - u00) + (u11 - u10)) / u.hy;
  return std::exp(-um) * std::sqrt(1.0 + p * p + q * q);
}

bool in_window(const GridFunction& u, const Region& w, int i, int j) { return w.contains(u.x(i), u.y(j)); }

}  // namespace

double weighted_area(const GridFunction& u, const Region& region) {
  u.validate();
  const double x1 = u.x(u.nx - 1), y1 = u.y(u.ny - 1);
  const double tol = 1e-12 * std::max({1.0, std::abs(u.x0), std::abs(x1), std::abs(u.y0), std::abs(y1)});
  require(region.xmin <= region.xmax && region.ymin <= region.ymax, ErrorCode::RegionOutOfBounds, "empty region");
  require(region.xmin >= u.x0 - tol && region.xmax <= x1 + tol && region.ymin >= u.y0 - tol &&
              region.ymax <= y1 + tol,
          ErrorCode::RegionOutOfBounds, "region leaves the grid");
  CompensatedSum s;
  for (int i = 0; i + 1 < u.nx; ++i) {
    const double xm = u.x(i) + 0.5 * u.hx;
    if (xm < region.xmin || xm > region.xmax) continue;
    for (int j = 0; j + 1 < u.ny; ++j) {
      const double ym = u.y(j) + 0.5 * u.hy;
      if (ym < region.ymin || ym > region.ymax) continue;
      s.add(cell_integrand(u, i, j));
    }
  }
  return s.value() * u.hx * u.hy;
}

double VariationSpec::bump(double x, double y) const {
  const double dx = x - cx, dy = y - cy;
  if (std::abs(dx) >= radius || std::abs(dy) >= radius) return 0.0;
  const double cxv = std::cos(0.5 * kPi * dx / radius), cyv = std::cos(0.5 * kPi * dy / radius);
  return cxv * cxv * cyv * cyv;
}

void VariationSpec::validate(const GridFunction& u) const {
  require(epsilon > 0.0 && std::isfinite(epsilon), ErrorCode::InvalidArgument, "epsilon must be positive");
  require(radius > 0.0, ErrorCode::InvalidArgument, "bump radius must be positive");
  require(cx - radius >= u.x(2) && cx + radius <= u.x(u.nx - 3) && cy - radius >= u.y(2) &&
              cy + radius <= u.y(u.ny - 3),
          ErrorCode::InvalidArgument, "bump must vanish within two nodes of the boundary");
}

FirstVariation first_variation_check(const GridFunction& u, const VariationSpec& v) {
  u.validate();
  v.validate(u);
  GridFunction plus = u, minus = u;
  double max_shift = 0.0;
  CompensatedSum phi_int;
  for (int i = 1; i < u.nx - 1; ++i) {
    for (int j = 1; j < u.ny - 1; ++j) {
      const double phi = v.bump(u.x(i), u.y(j));
      if (phi == 0.0) continue;
      const Jet jet = central_jet(u, i, j);
      const double W = std::sqrt(1.0 + jet.ux * jet.ux + jet.uy * jet.uy);
      const double dz = v.epsilon * phi * W;
      plus(i, j) += dz;
      minus(i, j) -= dz;
      max_shift = std::max(max_shift, std::abs(dz));
      phi_int.add(phi);
    }
  }
  if (!(max_shift <= 0.1 * std::min(u.hx, u.hy)))
    fail(ErrorCode::PerturbationTooLarge, "height perturbation exceeds a tenth of the grid spacing");
  for (double z : plus.values)
    require(std::isfinite(z), ErrorCode::PerturbationTooLarge, "perturbed surface is not finite");
  const Region support{v.cx - v.radius - u.hx, v.cx + v.radius + u.hx, v.cy - v.radius - u.hy,
                       v.cy + v.radius + u.hy};
  FirstVariation out;
  out.epsilon = v.epsilon;
  out.areaPlus = weighted_area(plus, support);
  out.areaMinus = weighted_area(minus, support);
  out.derivative = (out.areaPlus - out.areaMinus) / (2.0 * v.epsilon);
  out.bumpIntegral = phi_int.value() * u.hx * u.hy;
  return out;
}

ScalarField stability_apply(const GridFunction& u, const GeometryField& geom, const ScalarField& phi) {
  ScalarField out = drift_laplacian(phi, u, geom);
  for (std::size_t k = 0; k < out.values.size(); ++k)
    if (std::isfinite(out.values[k])) out.values[k] += geom.normA2[k] * phi.values[k];
  return out;
}

ScalarField jacobi_residual(const GridFunction& u, const GeometryField& geom) {
  return stability_apply(u, geom, geom.vertical_normal());
}

GradHCheck gradH_identity_check(const GridFunction& u, const GeometryField& geom, const Region& window) {
  const ScalarField H = geom.field(geom.H);
  require(geom.nx == u.nx && geom.ny == u.ny, ErrorCode::ShapeMismatch, "geometry/grid mismatch");
  require(u.nx >= 5 && u.ny >= 5, ErrorCode::MarginTooSmall, "grid lacks a two-node margin");
  const double sigma = geom.orientation == Orientation::Upward ? 1.0 : -1.0;
  GradHCheck out{ScalarField::undefined(u.nx, u.ny), 0.0};
  for (int i = 2; i < u.nx - 2; ++i) {
    for (int j = 2; j < u.ny - 2; ++j) {
      const Jet du = central_jet(u, i, j);
      const Jet dH = central_jet(H, u, i, j);
      if (!std::isfinite(dH.ux) || !std::isfinite(dH.uy)) continue;
      const double p = du.ux, q = du.uy;
      const double W = std::sqrt(1.0 + p * p + q * q);
      Eigen::Matrix2d g, B;
      g << 1.0 + p * p, p * q, p * q, 1.0 + q * q;
      B << du.uxx, du.uxy, du.uxy, du.uyy;
      B *= sigma / W;
      const Eigen::Matrix2d gi = g.inverse();
      // Both sides as parameter-plane components of tangent vectors.
      const Eigen::Vector2d e3t = gi * Eigen::Vector2d(p, q);
      const Eigen::Vector2d w = gi * (Eigen::Vector2d(dH.ux, dH.uy) - B * e3t);
      const double d = std::sqrt(std::max(0.0, w.dot(g * w)));
      out.defect(i, j) = d;
      if (in_window(u, window, i, j)) out.maxDefect = std::max(out.maxDefect, d);
    }
  }
  return out;
}

SpruckXiaoReport spruck_xiao_report(const GridFunction& u, const GeometryField& geom, const Region& window) {
  require(geom.nx == u.nx && geom.ny == u.ny, ErrorCode::ShapeMismatch, "geometry/grid mismatch");
  require(u.nx >= 5 && u.ny >= 5, ErrorCode::MarginTooSmall, "grid lacks a two-node margin");
  const std::size_t n = u.size();

  // Sign of H on the candidate set decides the orientation.
  int pos = 0, neg = 0;
  for (int i = 2; i < u.nx - 2; ++i)
    for (int j = 2; j < u.ny - 2; ++j) {
      const std::size_t k = u.index(i, j);
      if (!in_window(u, window, i, j) || geom.umbilic(i, j)) continue;
      if (geom.H[k] > 0.0) ++pos;
      if (geom.H[k] < 0.0) ++neg;
    }
  require(pos == 0 || neg == 0, ErrorCode::Precondition, "H changes sign on the evaluation set");

  SpruckXiaoReport rep;
  rep.flipped = neg > 0;
  const double s = rep.flipped ? -1.0 : 1.0;
  std::vector<double> H(n, kNaN), k1(n, kNaN), ratio(n, kNaN);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(geom.flags[k] & kInterior)) continue;
    H[k] = s * geom.H[k];
    k1[k] = rep.flipped ? -geom.kappa2[k] : geom.kappa1[k];
    if (!(geom.flags[k] & kUmbilic) && k1[k] > 0.0) ratio[k] = H[k] / k1[k];
  }
  const ScalarField Hf = geom.field(H), K1 = geom.field(k1);
  rep.ratio = geom.field(ratio);
  const QSquared q2 = q_squared(geom, u);
  rep.q2 = q2.value;
  const ScalarField dH = drift_laplacian(Hf, u, geom);
  const ScalarField dK1 = drift_laplacian(K1, u, geom);
  const ScalarField dR = drift_laplacian(rep.ratio, u, geom);
  const ScalarField gradKR = gradient_inner(K1, rep.ratio, u);

  rep.defectDriftH = ScalarField::undefined(u.nx, u.ny);
  rep.defectDriftK1 = ScalarField::undefined(u.nx, u.ny);
  rep.lhsInequality = ScalarField::undefined(u.nx, u.ny);
  rep.mask.assign(n, 0);
  double amax = 0.0;
  rep.ratioMin = std::numeric_limits<double>::infinity();
  rep.ratioMax = -std::numeric_limits<double>::infinity();
  for (int i = 2; i < u.nx - 2; ++i) {
    for (int j = 2; j < u.ny - 2; ++j) {
      const std::size_t k = u.index(i, j);
      if (!in_window(u, window, i, j)) continue;
      const double a2 = geom.normA2[k];
      rep.defectDriftH.values[k] = dH.values[k] + a2 * H[k];
      if (!std::isfinite(ratio[k]) || !std::isfinite(dR.values[k]) || !std::isfinite(q2.value.values[k]) ||
          q2.umbilic[k])
        continue;
      const double k2 = H[k] - k1[k];
      rep.defectDriftK1.values[k] = dK1.values[k] + a2 * k1[k] - 2.0 * q2.value.values[k] / (k1[k] - k2);
      rep.lhsInequality.values[k] = dR.values[k] + 2.0 * gradKR.values[k] / k1[k];
      rep.mask[k] = 1;
      ++rep.maskCount;
      amax = std::max(amax, std::sqrt(a2));
      rep.ratioMin = std::min(rep.ratioMin, ratio[k]);
      rep.ratioMax = std::max(rep.ratioMax, ratio[k]);
      rep.maxDefectH = std::max(rep.maxDefectH, std::abs(rep.defectDriftH.values[k]));
      rep.maxDefectK1 = std::max(rep.maxDefectK1, std::abs(rep.defectDriftK1.values[k]));
    }
  }
  require(rep.maskCount > 0, ErrorCode::EmptyMask, "no non-umbilic node in the evaluation set");
  rep.tau = 10.0 * std::max(u.hx, u.hy) * amax * amax * amax;
  std::size_t above = 0;
  rep.maxLhs = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    if (!rep.mask[k]) continue;
    rep.maxLhs = std::max(rep.maxLhs, rep.lhsInequality.values[k]);
    if (rep.lhsInequality.values[k] > rep.tau) ++above;
  }
  rep.fractionAboveTau = static_cast<double>(above) / static_cast<double>(rep.maskCount);
  rep.fractionWithinTau = 1.0 - rep.fractionAboveTau;
  return rep;
}

double max_abs_in(const ScalarField& f, const GridFunction& u, const Region& window) {
  require(f.aligned_with(u), ErrorCode::ShapeMismatch, "field is not aligned with the grid");
  double m = 0.0;
  for (int i = 0; i < u.nx; ++i)
    for (int j = 0; j < u.ny; ++j) {
      const double v = f(i, j);
      if (std::isfinite(v) && in_window(u, window, i, j)) m = std::max(m, std::abs(v));
    }
  return m;
}

}  // namespace translab
