// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "translab/analysis.hpp"
#include "translab/elliptic.hpp"
#include "translab/errors.hpp"
#include "translab/numerics.hpp"
#include "translab/radial.hpp"

using namespace translab;
using translab::test::max_abs_finite;

namespace {

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("expected " << to_string(code));
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

GridFunction constant(double c, int n = 41) {
  return GridFunction::centered(n, n, 1.0, 1.0, [c](double, double) { return c; });
}

GridFunction grim(int n) {
  return GridFunction::centered(n, n, 2.0, 1.3, [](double, double y) { return std::log(std::cos(y)); });
}

GridFunction tilted(int n) {
  const double th = kPi / 6, c = std::cos(th);
  return GridFunction::centered(n, n, 1.2, 1.0,
                                [=](double x, double y) { return std::log(std::cos(x * c)) / (c * c) - std::tan(th) * y; });
}

const RadialProfile& bowl() {
  static const RadialProfile p = shoot_bowl(2, 10.0, 1e-3);
  return p;
}

const SolveResult& wing() {
  static const SolveResult r = delta_wing(kPi / std::sqrt(2.0), 12.0, 193, 65, SolverConfig{});
  return r;
}

}  // namespace

TEST_CASE("weighted_area: constants") {
  const Region unit{0.0, 1.0, 0.0, 1.0};
  CHECK(weighted_area(constant(0.0), unit) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(weighted_area(constant(0.7), unit) == doctest::Approx(std::exp(-0.7)).epsilon(1e-12));
  CHECK(weighted_area(constant(-2.0), Region{-1.0, 1.0, -0.5, 0.5}) == doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-12));
}

TEST_CASE("weighted_area: grim reaper strip against 2 tan 1") {
  double prev = 0.0;
  for (int n : {41, 81, 161}) {
    // Strip variable x across [-1, 1], travel variable y over [0, 1].
    const GridFunction u = GridFunction::centered(n, n, 1.0, 1.0, [](double x, double) { return std::log(std::cos(x)); });
    const double err = std::abs(weighted_area(u, Region{-1.0, 1.0, 0.0, 1.0}) - 2.0 * std::tan(1.0));
    CHECK(err < 1e-2);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.25));
    prev = err;
  }
}

TEST_CASE("weighted_area: region outside the grid") {
  expect_code(ErrorCode::RegionOutOfBounds, [] { weighted_area(constant(0.0), Region{-2.0, 0.0, 0.0, 1.0}); });
  expect_code(ErrorCode::RegionOutOfBounds, [] { weighted_area(constant(0.0), Region{0.5, 0.0, 0.0, 1.0}); });
}

TEST_CASE("VariationSpec: bump shape and support") {
  VariationSpec v;
  v.radius = 0.5;
  CHECK(v.bump(0.0, 0.0) == 1.0);
  CHECK(v.bump(0.5, 0.0) == doctest::Approx(0.0));
  CHECK(v.bump(0.7, 0.1) == 0.0);
  CHECK(v.bump(0.25, 0.25) == doctest::Approx(0.25));
  v.radius = 0.99;
  expect_code(ErrorCode::InvalidArgument, [&] { v.validate(constant(0.0)); });
  v.radius = 0.5;
  v.epsilon = 0.0;
  expect_code(ErrorCode::InvalidArgument, [&] { v.validate(constant(0.0)); });
}

TEST_CASE("first_variation_check: u = 0 is not a translator") {
  VariationSpec v;
  v.radius = 0.8;
  const FirstVariation f = first_variation_check(constant(0.0, 81), v);
  // d/de A[e phi] = -int phi at e = 0; the tensor bump integrates to r^2.
  CHECK(f.derivative == doctest::Approx(-0.64).epsilon(1e-3));
  CHECK(std::abs(f.derivative) >= 1e-3);
  CHECK(f.bumpIntegral == doctest::Approx(0.64).epsilon(1e-3));
  CHECK(f.areaPlus < f.areaMinus);
}

TEST_CASE("first_variation_check: grim reaper vanishes at second order") {
  VariationSpec v;
  v.radius = 0.8;
  double prev = 0.0;
  for (int n : {33, 65, 129}) {
    const double d = std::abs(first_variation_check(grim(n), v).derivative);
    if (prev > 0.0) CHECK(prev / d == doctest::Approx(4.0).epsilon(0.25));
    prev = d;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("first_variation_check: central difference in epsilon") {
  VariationSpec v;
  v.radius = 1.5;
  v.epsilon = 1e-4;
  double d[3];
  for (int k = 0; k < 3; ++k) {
    v.epsilon = 4e-4 / std::pow(2.0, k);
    d[k] = first_variation_check(wing().u, v).derivative;
  }
  CHECK(std::abs(d[1] - d[2]) <= 1e-6);
  CHECK((d[0] - d[1]) / (d[1] - d[2]) == doctest::Approx(4.0).epsilon(0.1));
  v.epsilon = 1.0;
  expect_code(ErrorCode::PerturbationTooLarge, [&] { first_variation_check(wing().u, v); });
}

TEST_CASE("stability_apply: trivial cases") {
  const GridFunction u = tilted(33);
  const GeometryField g = graph_geometry(u);
  CHECK(max_abs_finite(stability_apply(u, g, ScalarField::like(u, 0.0))) == 0.0);
  const GridFunction flat = constant(0.0, 21);
  const GeometryField gf = graph_geometry(flat);
  const ScalarField j = stability_apply(flat, gf, gf.vertical_normal());
  CHECK(max_abs_finite(j) == 0.0);
  CHECK(max_abs_finite(jacobi_residual(flat, gf)) == 0.0);
}

TEST_CASE("jacobi_residual: second order on closed-form and radial translators") {
  for (int pass = 0; pass < 2; ++pass) {
    double prev = 0.0;
    for (int n : {41, 81, 161}) {
      const GridFunction u = pass == 0 ? grim(n) : revolve_to_grid(bowl(), n, n, 3.0, 3.0);
      const double m = max_abs_in(jacobi_residual(u, graph_geometry(u)), u);
      if (prev > 0.0) CHECK(prev / m == doctest::Approx(4.0).epsilon(0.25));
      prev = m;
    }
  }
}

TEST_CASE("jacobi_residual: a non-translator is not annihilated") {
  const GridFunction u = GridFunction::centered(81, 81, 1.0, 1.0, [](double x, double y) { return -(x * x + 2 * y * y); });
  CHECK(max_abs_in(jacobi_residual(u, graph_geometry(u)), u) > 0.1);
}

TEST_CASE("gradH_identity_check: plane, bowl and Delta-wing") {
  const GridFunction flat = constant(0.0, 21);
  CHECK(gradH_identity_check(flat, graph_geometry(flat)).maxDefect == 0.0);
  double prev = 0.0;
  for (int n : {41, 81, 161}) {
    const GridFunction u = revolve_to_grid(bowl(), n, n, 3.0, 3.0);
    const double d = gradH_identity_check(u, graph_geometry(u)).maxDefect;
    if (prev > 0.0) CHECK(prev / d >= 2.0);
    prev = d;
  }
  const GridFunction& w = wing().u;
  const GradHCheck c = gradH_identity_check(w, graph_geometry(w));
  CHECK(c.maxDefect < 0.1);
  CHECK(c.maxDefect == doctest::Approx(max_abs_finite(c.defect)));
}

TEST_CASE("spruck_xiao_report: tilted grim reaper") {
  const GridFunction u = tilted(65);
  const SpruckXiaoReport r = spruck_xiao_report(u, graph_geometry(u));
  CHECK(r.flipped);
  CHECK(r.ratioMin == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.ratioMax == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.maxLhs <= u.hx);
  CHECK(r.fractionWithinTau == 1.0);
  CHECK(r.tau > 0.0);
}

TEST_CASE("spruck_xiao_report: Delta-wing and bowl ratios lie in [1, 2]") {
  const GridFunction& w = wing().u;
  const SpruckXiaoReport r = spruck_xiao_report(w, graph_geometry(w));
  const double h = std::max(w.hx, w.hy);
  CHECK(r.ratioMin >= 1.0 - 10 * h);
  CHECK(r.ratioMax <= 2.0);
  CHECK(r.fractionWithinTau >= 0.99);
  CHECK(r.fractionAboveTau + r.fractionWithinTau == doctest::Approx(1.0));
  CHECK(r.maskCount > 0);

  const GridFunction b = revolve_to_grid(bowl(), 81, 81, 3.0, 3.0);
  const SpruckXiaoReport rb = spruck_xiao_report(b, graph_geometry(b));
  CHECK(rb.ratioMin >= 1.0 - 10 * b.hx);
  CHECK(rb.ratioMax <= 2.0 + 10 * b.hx);
  CHECK(rb.maxDefectH < 1e-3);
}

TEST_CASE("spruck_xiao_report: non-translators and bad inputs") {
  // Ellipsoid cap: convex, not umbilic off the axes, not a translator.
  const GridFunction e = GridFunction::centered(41, 41, 0.6, 0.6,
                                                [](double x, double y) { return std::sqrt(1.0 - x * x / 4 - y * y); });
  const SpruckXiaoReport re = spruck_xiao_report(e, graph_geometry(e));
  CHECK(re.maxDefectH > 0.1);

  const GridFunction s = GridFunction::centered(41, 41, 0.6, 0.6, [](double x, double y) { return std::sqrt(1.0 - x * x - y * y); });
  CHECK(spruck_xiao_report(s, graph_geometry(s)).maxDefectH > 0.1);

  const GridFunction flat = constant(0.0, 21);
  expect_code(ErrorCode::EmptyMask, [&] { spruck_xiao_report(flat, graph_geometry(flat)); });

  const GridFunction saddle = GridFunction::centered(41, 41, 1.0, 1.0, [](double x, double y) { return x * x * x + 0.1 * y * y; });
  expect_code(ErrorCode::Precondition, [&] { spruck_xiao_report(saddle, graph_geometry(saddle)); });
}

TEST_CASE("max_abs_in respects the window") {
  const GridFunction u = constant(0.0, 5);
  ScalarField f = ScalarField::like(u, 1.0);
  f(0, 0) = 7.0;
  f(2, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK(max_abs_in(f, u) == 7.0);
  CHECK(max_abs_in(f, u, Region{-0.6, 1.0, -0.6, 1.0}) == 1.0);
}
