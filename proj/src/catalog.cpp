// SPDX-License-Identifier: Apache-2.0
#include "translab/catalog.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "translab/errors.hpp"
#include "translab/numerics.hpp"

namespace translab {

AnalyticTranslator AnalyticTranslator::tilted(double theta) {
  require(theta >= 0.0 && theta < 0.5 * kPi, ErrorCode::InvalidArgument,
          "tilt angle must lie in [0, pi/2), got " + std::to_string(theta));
  return {Kind::TiltedGrimReaper, theta};
}

double AnalyticTranslator::half_width() const {
  if (kind == Kind::VerticalPlane) return std::numeric_limits<double>::infinity();
  return 0.5 * kPi / std::cos(theta);
}

Jet evaluate(const AnalyticTranslator& t, double x, double y) {
  require(t.is_graph(), ErrorCode::InvalidArgument, "vertical plane has no height function");
  const double c = std::cos(t.theta);
  const double sec2 = 1.0 / (c * c);
  const double tn = std::tan(t.theta);
  const double s = x * c;
  require(0.5 * kPi - std::abs(s) >= kDomainGuard, ErrorCode::OutOfDomain,
          "point x = " + std::to_string(x) + " is outside the open strip");
  const double cs = std::cos(s);
  Jet j;
  j.u = sec2 * std::log(cs) - tn * y;
  j.ux = -std::tan(s) / c;
  j.uy = -tn;
  j.uxx = -1.0 / (cs * cs);
  j.uxy = 0.0;
  j.uyy = 0.0;
  return j;
}

double pde_residual(const Jet& j) {
  const double p = j.ux, q = j.uy;
  return (1.0 + q * q) * j.uxx - 2.0 * p * q * j.uxy + (1.0 + p * p) * j.uyy + p * p + q * q + 1.0;
}

PointResidual residual_at(const AnalyticTranslator& t, double x, double y) {
  if (!t.is_graph()) return {0.0, false};
  return {pde_residual(evaluate(t, x, y)), true};
}

ResidualReport residual_report(const GridFunction& u) {
  u.validate();
  ResidualReport rep;
  rep.perNode = ScalarField::undefined(u.nx, u.ny);
  CompensatedSum sq;
  for (int i = 1; i < u.nx - 1; ++i) {
    for (int j = 1; j < u.ny - 1; ++j) {
      const Jet jet = central_jet(u, i, j);
      const double r = pde_residual(jet);
      require(std::isfinite(r), ErrorCode::NonFinite, "residual overflowed");
      rep.perNode(i, j) = r;
      rep.maxAbs = std::max(rep.maxAbs, std::abs(r));
      rep.maxGradient = std::max(rep.maxGradient, std::hypot(jet.ux, jet.uy));
      sq.add(r * r);
    }
  }
  rep.l2 = std::sqrt(sq.value() * u.hx * u.hy);
  return rep;
}

}  // namespace translab
