// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "translab/errors.hpp"
#include "translab/geom.hpp"
#include "translab/numerics.hpp"
#include "translab/radial.hpp"

using namespace translab;
using translab::test::max_abs_finite;
using translab::test::max_error;

namespace {

GridFunction grim_grid(int n) {
  return GridFunction::centered(n, n, 1.2, 1.0, [](double x, double) { return std::log(std::cos(x)); });
}

// Mean curvature of a graph with upward normal from the divergence form.
double graph_H(double ux, double uy, double uxx, double uxy, double uyy) {
  const double W2 = 1.0 + ux * ux + uy * uy;
  return ((1 + uy * uy) * uxx - 2 * ux * uy * uxy + (1 + ux * ux) * uyy) / std::pow(W2, 1.5);
}

GridFunction bowl_grid(int n) { return revolve_to_grid(shoot_bowl(2, 10.0, 1e-3), n, n, 3.0, 3.0); }

}  // namespace

TEST_CASE("graph_geometry: flat plane") {
  const GridFunction u = GridFunction::centered(9, 9, 1.0, 1.0, [](double, double) { return 0.0; });
  const GeometryField g = graph_geometry(u);
  for (int i = 1; i < 8; ++i)
    for (int j = 1; j < 8; ++j) {
      const auto k = g.index(i, j);
      CHECK(g.H[k] == 0.0);
      CHECK(g.kappa1[k] == 0.0);
      CHECK(g.kappa2[k] == 0.0);
      CHECK((g.normal[k] - Vec3::UnitZ()).norm() == 0.0);
    }
  CHECK(std::isnan(g.H[g.index(0, 4)]));
}

TEST_CASE("graph_geometry: grim reaper translator defect and vertical normal") {
  double prevDefect = 0.0, prevNormal = 0.0;
  for (int n : {49, 97, 193}) {
    const GridFunction u = grim_grid(n);
    const GeometryField g = graph_geometry(u);
    const double defect = max_abs_finite(translator_defect(g));
    const double normalErr = max_error(g.vertical_normal(), u, [](double x, double) { return std::cos(x); });
    const double h = u.hx;
    CHECK(defect < 2.0 * h * h);
    CHECK(normalErr < h * h);
    if (prevDefect > 0.0) {
      CHECK(prevDefect / defect == doctest::Approx(4.0).epsilon(0.175));
      CHECK(prevNormal / normalErr == doctest::Approx(4.0).epsilon(0.175));
    }
    prevDefect = defect;
    prevNormal = normalErr;
  }
}

TEST_CASE("point_geometry: paraboloid at its vertex") {
  Jet j;
  j.uxx = -1.0;
  j.uyy = -1.0;
  const PointGeometry p = point_geometry(j);
  CHECK(p.kappa1 == doctest::Approx(-1.0));
  CHECK(p.kappa2 == doctest::Approx(-1.0));
  CHECK(p.H == doctest::Approx(-2.0));
  CHECK(p.umbilic);

  const GridFunction u = GridFunction::centered(21, 21, 1.0, 1.0, [](double x, double y) { return -(x * x + y * y) / 2; });
  const GeometryField g = graph_geometry(u);
  const auto c = g.index(10, 10);
  CHECK(g.H[c] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(g.kappa1[c] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(g.umbilic(10, 10));
  const Jet jc = central_jet(u, 10, 10);
  CHECK(jc.uxx + jc.uyy == doctest::Approx(-2.0));
}

TEST_CASE("graph_geometry: frame orthonormality, ordering and |A|^2") {
  const GridFunction u = GridFunction::centered(41, 41, 1.0, 1.0,
                                                [](double x, double y) { return 0.3 * std::sin(2 * x) * std::cos(y) + x * y; });
  const GeometryField g = graph_geometry(u);
  for (int i = 1; i < u.nx - 1; ++i)
    for (int j = 1; j < u.ny - 1; ++j) {
      const auto k = g.index(i, j);
      CHECK(std::abs(g.normal[k].norm() - 1.0) <= 1e-12);
      CHECK(std::abs(g.v1[k].dot(g.v2[k])) <= 1e-10);
      CHECK(std::abs(g.v1[k].dot(g.normal[k])) <= 1e-10);
      CHECK(std::abs(g.v2[k].dot(g.normal[k])) <= 1e-10);
      CHECK(std::abs(g.v1[k].norm() - 1.0) <= 1e-10);
      CHECK(g.kappa1[k] >= g.kappa2[k]);
      CHECK(g.H[k] == doctest::Approx(g.kappa1[k] + g.kappa2[k]));
      CHECK(g.normA2[k] == doctest::Approx(g.kappa1[k] * g.kappa1[k] + g.kappa2[k] * g.kappa2[k]));
      CHECK((g.meanCurvVec[k] - g.H[k] * g.normal[k]).norm() <= 1e-14 * (1 + std::abs(g.H[k])));
      CHECK(g.normal[k].z() > 0.0);
    }
}

TEST_CASE("graph_geometry: H converges at second order on an analytic surface") {
  auto f = [](double x, double y) { return 0.4 * std::sin(x) * std::cos(1.5 * y); };
  auto H = [](double x, double y) {
    const double ux = 0.4 * std::cos(x) * std::cos(1.5 * y), uy = -0.6 * std::sin(x) * std::sin(1.5 * y);
    const double uxx = -0.4 * std::sin(x) * std::cos(1.5 * y), uxy = -0.6 * std::cos(x) * std::sin(1.5 * y);
    const double uyy = -0.9 * std::sin(x) * std::cos(1.5 * y);
    return graph_H(ux, uy, uxx, uxy, uyy);
  };
  double prev = 0.0;
  for (int n : {21, 41, 81}) {
    const GridFunction u = GridFunction::centered(n, n, 1.0, 1.0, f);
    const GeometryField g = graph_geometry(u);
    const double err = max_error(g.field(g.H), u, H);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.175));
    prev = err;
  }
}

TEST_CASE("translator_defect is independent of the orientation") {
  const GridFunction u = bowl_grid(41);
  const ScalarField up = translator_defect(graph_geometry(u, Orientation::Upward));
  const ScalarField down = translator_defect(graph_geometry(u, Orientation::Downward));
  for (std::size_t k = 0; k < up.values.size(); ++k) {
    if (std::isnan(up.values[k])) {
      CHECK(std::isnan(down.values[k]));
      continue;
    }
    CHECK(up.values[k] == doctest::Approx(down.values[k]).epsilon(1e-12));
  }
}

TEST_CASE("drift_laplacian: constants and the flat plane") {
  const GridFunction flat = GridFunction::centered(15, 15, 1.0, 1.0, [](double, double) { return 0.0; });
  const GeometryField gf = graph_geometry(flat);
  ScalarField phi = ScalarField::like(flat, 0.0);
  for (int i = 0; i < flat.nx; ++i)
    for (int j = 0; j < flat.ny; ++j) phi(i, j) = flat.x(i) * flat.x(i);
  const ScalarField d = drift_laplacian(phi, flat, gf);
  CHECK(max_error(d, flat, [](double, double) { return 2.0; }) < 1e-10);
  CHECK(std::isnan(d(1, 7)));
  CHECK(std::isfinite(d(2, 7)));

  const GridFunction wavy = grim_grid(33);
  const ScalarField c = drift_laplacian(ScalarField::like(wavy, 3.5), wavy, graph_geometry(wavy));
  CHECK(max_abs_finite(c) == 0.0);
}

TEST_CASE("drift_laplacian: MarginTooSmall on a 3x3 grid") {
  const GridFunction u = GridFunction::centered(3, 3, 1.0, 1.0, [](double, double) { return 0.0; });
  const GeometryField g = graph_geometry(u);
  try {
    drift_laplacian(ScalarField::like(u, 0.0), u, g);
    FAIL("expected MarginTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MarginTooSmall);
  }
}

TEST_CASE("drift_laplacian: drift identity for H on the bowl") {
  double prev = 0.0;
  for (int n : {41, 81, 161}) {
    const GridFunction u = bowl_grid(n);
    const GeometryField g = graph_geometry(u);
    const ScalarField d = drift_laplacian(g.field(g.H), u, g);
    ScalarField defect = d;
    for (std::size_t k = 0; k < d.values.size(); ++k) defect.values[k] = d.values[k] + g.normA2[k] * g.H[k];
    const double m = max_abs_finite(defect);
    if (prev > 0.0) CHECK(prev / m == doctest::Approx(4.0).epsilon(0.25));
    prev = m;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("q_squared: plane, tilted grim reaper and bowl tip") {
  const GridFunction flat = GridFunction::centered(9, 9, 1.0, 1.0, [](double, double) { return 0.0; });
  const QSquared qf = q_squared(graph_geometry(flat), flat);
  CHECK(std::isnan(qf.value(4, 4)));
  CHECK(qf.umbilic[flat.index(4, 4)] == 1);

  const double th = kPi / 6;
  auto tilted = [th](double x, double y) {
    return std::log(std::cos(x * std::cos(th))) / (std::cos(th) * std::cos(th)) - std::tan(th) * y;
  };
  for (int n : {33, 65}) {
    const GridFunction u = GridFunction::centered(n, n, 1.2, 1.0, tilted);
    const QSquared q = q_squared(graph_geometry(u), u);
    for (double v : q.value.values)
      if (std::isfinite(v)) CHECK(v >= 0.0);
    CHECK(max_abs_finite(q.value) < u.hx * u.hx);
  }

  const GridFunction b = bowl_grid(41);
  const GeometryField gb = graph_geometry(b);
  CHECK(gb.umbilic(20, 20));
  const QSquared qb = q_squared(gb, b);
  CHECK(std::isnan(qb.value(20, 20)));
  CHECK(qb.umbilic[b.index(20, 20)] == 1);
}

TEST_CASE("q_squared on the bowl matches the radial derivative of the rotational curvature") {
  const RadialProfile p = shoot_bowl(2, 10.0, 1e-3);
  const RadialIdentityReport rep = radial_identities_report(p, 1.0, 2.5);
  auto radial_q2 = [&](double r) {
    auto it = std::lower_bound(rep.r.begin(), rep.r.end(), r);
    const std::size_t k = static_cast<std::size_t>(it - rep.r.begin());
    const double t = (r - rep.r[k - 1]) / (rep.r[k] - rep.r[k - 1]);
    return (1 - t) * rep.q2[k - 1] + t * rep.q2[k];
  };
  double prev = 0.0;
  for (int n : {41, 81, 161}) {
    const GridFunction u = revolve_to_grid(p, n, n, 3.0, 3.0);
    const QSquared q = q_squared(graph_geometry(u), u);
    double err = 0.0;
    const int jc = (n - 1) / 2;
    for (int i = jc; i < n - 2; ++i) {
      const double r = u.x(i);
      if (r < 1.0 || r > 2.5) continue;
      err = std::max(err, std::abs(q.value(i, jc) - radial_q2(r)));
    }
    if (prev > 0.0) CHECK(prev / err > 1.7);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("curve_geometry: circles and the (2,1) ellipse") {
  const CurveGeometry c = curve_geometry(CurveState::circle(1.0, 256));
  for (double k : c.kappa) CHECK(k == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(c.length == doctest::Approx(2 * kPi).epsilon(1e-3 / (2 * kPi)));
  CHECK(c.enclosedArea == doctest::Approx(kPi).epsilon(1e-3 / kPi));
  for (std::size_t i = 0; i < c.normal.size(); ++i) CHECK(c.normal[i].norm() == doctest::Approx(1.0));

  const CurveGeometry c2 = curve_geometry(CurveState::circle(2.0, 256));
  CHECK(c2.Amax == doctest::Approx(0.5).epsilon(1e-3));

  const CurveState e = CurveState::ellipse(2.0, 1.0, 512);
  const CurveGeometry ge = curve_geometry(e);
  CHECK(ge.Amax == doctest::Approx(2.0).epsilon(5e-3));
  CHECK(ge.kappa[0] == doctest::Approx(2.0).epsilon(5e-3));
  CHECK(ge.kappa[256] == doctest::Approx(2.0).epsilon(5e-3));
  // Closed form kappa = ab / (a^2 sin^2 s + b^2 cos^2 s)^{3/2} at the parameter nodes.
  for (std::size_t i = 0; i < e.points.size(); i += 37) {
    const double s = 2 * kPi * i / 512.0;
    const double exact = 2.0 / std::pow(4 * std::sin(s) * std::sin(s) + std::cos(s) * std::cos(s), 1.5);
    CHECK(ge.kappa[i] == doctest::Approx(exact).epsilon(1e-2));
  }
}

TEST_CASE("CurveState validation") {
  CurveState c = CurveState::circle(1.0, 16);
  c.points[3] = c.points[2];
  try {
    curve_geometry(c);
    FAIL("expected DegenerateEdge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateEdge);
  }
  try {
    CurveState::circle(1.0, 4).validate();
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}
