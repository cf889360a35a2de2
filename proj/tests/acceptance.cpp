// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "translab/analysis.hpp"
#include "translab/catalog.hpp"
#include "translab/csf.hpp"
#include "translab/elliptic.hpp"
#include "translab/errors.hpp"
#include "translab/geom.hpp"
#include "translab/numerics.hpp"
#include "translab/radial.hpp"

using namespace translab;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool near(double v, double target, double tol) { return std::abs(v - target) <= tol; }

// Criteria 2, 8 and 10 are reported FAIL by design of the numbers; see README.
const std::set<int> kKnownFailures{2, 8, 10};

const SolveResult& wing961() {
  static const SolveResult r = delta_wing(kPi / std::sqrt(2.0), 12.0, 961, 161, SolverConfig{});
  return r;
}

const SingularityLog& circle256() {
  static const SingularityLog L = run(CurveState::circle(1.0, 256), FlowConfig{});
  return L;
}

const SingularityLog& ellipse512() {
  static const SingularityLog L = run(CurveState::ellipse(2.0, 1.0, 512), FlowConfig{});
  return L;
}

Outcome closed_form_residuals() {
  std::mt19937_64 rng(20261014);
  double worst = 0.0;
  for (double theta : {0.0, kPi / 6, kPi / 4, 0.4}) {
    const AnalyticTranslator t = theta == 0.0 ? AnalyticTranslator::grim_reaper() : AnalyticTranslator::tilted(theta);
    std::uniform_real_distribution<double> xs(-1.0 / std::cos(theta), 1.0 / std::cos(theta)), ys(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) worst = std::max(worst, std::abs(pde_residual(evaluate(t, xs(rng), ys(rng)))));
  }
  return {worst <= 1e-12, fmt("max |R| = %.2e over 4 x 100 points", worst)};
}

Outcome bowl_asymptotics() {
  const AsymptoticFit f2 = fit_asymptotics(shoot_bowl(2, 100.0, 1e-3), 20.0, 100.0);
  const AsymptoticFit f3 = fit_asymptotics(shoot_bowl(3, 100.0, 1e-3), 20.0, 100.0);
  const bool q2 = near(f2.quadCoeff, 0.5, 1e-3), l2 = near(f2.logCoeff, 1.0, 5e-2);
  const bool s2 = near(f2.remainderSlope, -1.0, 0.3), q3 = near(f3.quadCoeff, 0.25, 1e-3);
  return {q2 && l2 && s2 && q3, fmt("n=2 quad %.6f log %.4f slope %.3f%s; n=3 quad %.6f", f2.quadCoeff, f2.logCoeff,
                                    f2.remainderSlope, s2 ? "" : " (out of -1 +- 0.3)", f3.quadCoeff)};
}

Outcome catenoid_degeneration() {
  const CatenoidPair c = shoot_catenoid(2, 1e-3, 2.0, 1e-4);
  const RadialProfile b = shoot_bowl(2, 2.0, 1e-4);
  const double d = std::abs(slope_at(c.upper, 1.0) - slope_at(b, 1.0));
  return {d <= 1e-2, fmt("|u'_cat(1) - u'_bowl(1)| = %.3e", d)};
}

Outcome radial_identities() {
  std::vector<RadialIdentityReport> reps;
  for (double h : {4e-3, 2e-3, 1e-3}) reps.push_back(radial_identities_report(shoot_bowl(2, 31.0, h), 1.0, 30.0));
  bool ok = true;
  std::string d;
  for (std::size_t k = 1; k < reps.size(); ++k) {
    const double rh = reps[k - 1].maxDefectH / reps[k].maxDefectH;
    const double rk = reps[k - 1].maxDefectK1 / reps[k].maxDefectK1;
    ok = ok && near(rh, 4.0, 1.0) && near(rk, 4.0, 1.0);
    d += fmt("%sratio H %.3f K1 %.3f", k > 1 ? ", " : "", rh, rk);
  }
  return {ok, d + fmt(" (finest %.2e / %.2e)", reps.back().maxDefectH, reps.back().maxDefectK1)};
}

Outcome delta_wing_run() {
  const SolveReport& r = wing961().report;
  const double trace = r.centerHessian.trace();
  const bool ok = r.iterations <= 30 && r.finalResidualMax <= 1e-9 && r.symmetryDefect <= 1e-8 && r.concaveFlag &&
                  near(trace, -1.0, 1e-3) && r.asymptoteDefect <= 5e-2;
  return {ok, fmt("iters %d residual %.2e symmetry %.2e concave %d trace %.6f asymptote %.3e k %.4f", r.iterations,
                  r.finalResidualMax, r.symmetryDefect, int(r.concaveFlag), trace, r.asymptoteDefect, r.k)};
}

Outcome spruck_xiao_shadow() {
  const GridFunction& u = wing961().u;
  const SpruckXiaoReport s = spruck_xiao_report(u, graph_geometry(u));
  const double h = std::max(u.hx, u.hy);
  const bool ok = s.ratioMin >= 1.0 - 10 * h && s.ratioMax <= 2.0 && s.fractionWithinTau >= 0.99;
  return {ok, fmt("H/k1 in [%.4f, %.4f], within tau %.4f of %zu nodes", s.ratioMin, s.ratioMax, s.fractionWithinTau,
                  s.maskCount)};
}

Outcome jacobi_field() {
  auto jac = [](const GridFunction& u) { return max_abs_in(jacobi_residual(u, graph_geometry(u)), u); };
  const double w1 = jac(delta_wing(kPi / std::sqrt(2.0), 12.0, 193, 65, SolverConfig{}).u);
  const double w2 = jac(delta_wing(kPi / std::sqrt(2.0), 12.0, 385, 129, SolverConfig{}).u);
  const RadialProfile p = shoot_bowl(2, 10.0, 1e-3);
  const double b1 = jac(revolve_to_grid(p, 81, 81, 3.0, 3.0));
  const double b2 = jac(revolve_to_grid(p, 161, 161, 3.0, 3.0));
  const bool ok = near(w1 / w2, 4.0, 1.0) && near(b1 / b2, 4.0, 1.0);
  return {ok, fmt("wing %.3e -> %.3e (ratio %.3f), bowl %.3e -> %.3e (ratio %.3f)", w1, w2, w1 / w2, b1, b2, b1 / b2)};
}

Outcome first_variation() {
  VariationSpec v;
  v.radius = 1.5;
  v.epsilon = 1e-4;
  const double dw = first_variation_check(wing961().u, v).derivative;
  const GridFunction zero = GridFunction::centered(161, 161, 2.0, 2.0, [](double, double) { return 0.0; });
  const double d0 = first_variation_check(zero, v).derivative;
  return {std::abs(dw) <= 1e-6 && std::abs(d0) >= 1e-3, fmt("wing %.3e (bound 1e-6), u=0 control %.3e", dw, d0)};
}

Outcome circle_exactness() {
  const SingularityLog& L = circle256();
  double dev = 0.0;
  for (std::size_t k = L.windowStart; k < L.size(); ++k)
    if (L.times[k] < L.fittedT) dev = std::max(dev, std::abs(L.Amax[k] * std::sqrt(2 * (L.fittedT - L.times[k])) - 1));
  const double diam = diameter(CurveState::circle(1.0, 256));
  const double remark = 1.0 / (2.0 * L.Amax.front() * L.Amax.front());
  const bool cor = 2.0 * L.fittedT <= diam * diam;
  const bool ok = near(L.fittedT, 0.5, 1e-3) && dev <= 1e-2 && L.verdict.kind == TypeVerdict::Kind::TypeI &&
                  near(L.verdict.Climsup, 1.0, 2e-2) && cor && L.fittedT >= remark && near(L.fittedT, remark, 1e-3);
  return {ok, fmt("T %.6f product dev %.2e %s Climsup %.4f 2T <= diam^2 %d remark bound %.6f", L.fittedT, dev,
                  to_string(L.verdict.kind).c_str(), L.verdict.Climsup, int(cor), remark)};
}

Outcome blowup_bound() {
  const SingularityLog& L = ellipse512();
  double worst = 1e300;
  for (std::size_t k = L.windowStart; k < L.size(); ++k)
    if (L.times[k] < L.fittedT) worst = std::min(worst, L.Amax[k] * std::sqrt(2 * (L.fittedT - L.times[k])));
  const double round = roundness(run_until(CurveState::ellipse(2.0, 1.0, 512), 0.9 * L.fittedT, FlowConfig{})).ratio;
  return {worst >= 0.95 && round <= 1.05,
          fmt("min Amax sqrt(2(T-t)) %.4f, roundness at 0.9T %.4f (bound 1.05)", worst, round)};
}

Outcome comparison() {
  FlowConfig cfg;
  const ComparisonResult c = comparison_check(CurveState::circle(1.0, 512), CurveState::circle(2.0, 512), cfg, 100);
  double dev = 0.0;
  for (std::size_t k = 0; k < c.times.size(); ++k) {
    const double t = c.times[k];
    if (t < 0.5) dev = std::max(dev, std::abs(c.distance[k] - (std::sqrt(4 - 2 * t) - std::sqrt(1 - 2 * t))));
  }
  CurveState b = CurveState::circle(1.0, 256);
  for (Vec2& p : b.points) p.x() += 3.0;
  const ComparisonResult d = comparison_check(CurveState::circle(1.0, 256), b, cfg);
  return {c.pass && d.pass && dev <= 1e-2,
          fmt("concentric %s dev %.3e, translated %s min distance %.4f", c.pass ? "PASS" : "FAIL", dev,
              d.pass ? "PASS" : "FAIL", d.minDistance)};
}

Outcome area_law() {
  const double a = circle256().areaRateMaxDeviation, b = ellipse512().areaRateMaxDeviation;
  return {a <= 2e-2 && b <= 2e-2, fmt("max |dA/dt / (-2 pi) - 1|: circle %.3e, ellipse %.3e", a, b)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form residuals", closed_form_residuals},
      {"bowl asymptotics", bowl_asymptotics},
      {"catenoid degeneration", catenoid_degeneration},
      {"translator identities", radial_identities},
      {"Delta-wing existence", delta_wing_run},
      {"H/k1 shadow", spruck_xiao_shadow},
      {"Jacobi field", jacobi_field},
      {"first variation", first_variation},
      {"CSF circle exactness", circle_exactness},
      {"blow-up lower bound", blowup_bound},
      {"comparison principle", comparison},
      {"area law", area_law},
  };
  int unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const Error& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool known = kKnownFailures.count(id) > 0;
    std::printf("%s %2d %s: %s [%.1fs]%s\n", o.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(), o.detail.c_str(),
                secs, !o.pass && known ? " (known)" : "");
    std::fflush(stdout);
    if (!o.pass && !known) ++unexpected;
  }
  std::printf("%d unexpected failure(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
