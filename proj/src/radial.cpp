// SPDX-License-Identifier: Apache-2.0
#include "translab/radial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "translab/errors.hpp"
#include "translab/geom.hpp"
#include "translab/numerics.hpp"

namespace translab {

namespace {

template <std::size_t N, typename Rhs>
std::array<double, N> rk4(const Rhs& f, double t, const std::array<double, N>& y, double h) {
  auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  const auto k1 = f(t, y);
  const auto k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const auto k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const auto k4 = f(t + h, axpy(y, h, k3));
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Local error tolerance for the periodic step-doubling probe.
constexpr double kLocalErrorTol = 1e-7;
constexpr int kProbeEvery = 512;

double profile_curvature(int n, double r, double psi) {
  return -std::cos(psi) - (n - 1) * std::sin(psi) / r;
}

RadialSample make_sample(int n, double r, double u, double psi) {
  return {r, u, psi, profile_curvature(n, r, psi), std::sin(psi) / r};
}

/// Graph-phase integration in r of (u, psi) from the last sample of `p` to
/// r_max. Steps are min(h, 0.01 r) until they reach h, then land on multiples
/// of h.
void integrate_graph_phase(RadialProfile& p, double r_max, double h) {
  const int n = p.n;
  auto rhs = [n](double r, const std::array<double, 2>& y) {
    const double t = std::tan(y[1]);
    return std::array<double, 2>{t, -1.0 - (n - 1) * t / r};
  };
  double r = p.samples.back().r;
  std::array<double, 2> y{p.samples.back().u, p.samples.back().psi};
  long step = 0;
  while (r < r_max * (1.0 - 1e-15)) {
    double target = r + std::min(h, 0.01 * r);
    if (0.01 * r >= h) {
      // Snap onto the uniform lattice k*h.
      target = (std::floor(r / h + 1e-9) + 1.0) * h;
      if (target - r < 0.5 * h) target += h;
    }
    target = std::min(target, r_max);
    const double dr = target - r;
    const double sec2 = 1.0 + std::tan(y[1]) * std::tan(y[1]);
    require(dr * (n - 1) * sec2 / r < 2.5, ErrorCode::StepTooLarge,
            "step " + std::to_string(dr) + " exceeds the RK4 stability limit at r = " + std::to_string(r));
    std::array<double, 2> next = rk4<2>(rhs, r, y, dr);
    if (++step % kProbeEvery == 0) {
      const auto half = rk4<2>(rhs, r + 0.5 * dr, rk4<2>(rhs, r, y, 0.5 * dr), 0.5 * dr);
      const double err = std::max(std::abs(half[0] - next[0]) / (1.0 + std::abs(next[0])),
                                  std::abs(half[1] - next[1]));
      require(err < kLocalErrorTol, ErrorCode::StepTooLarge,
              "local error estimate " + std::to_string(err) + " at r = " + std::to_string(r));
    }
    require(target > r, ErrorCode::NonMonotoneR, "radius failed to increase");
    r = target;
    y = next;
    require(std::isfinite(y[0]) && std::isfinite(y[1]), ErrorCode::NonFinite, "profile blew up");
    p.samples.push_back(make_sample(n, r, y[0], y[1]));
  }
}

void check_inputs(int n, double r_max, double h) {
  require(n >= 2, ErrorCode::InvalidArgument, "surface dimension n must be >= 2");
  require(r_max > 0.0 && h > 0.0, ErrorCode::InvalidArgument, "r_max and h must be positive");
}

}  // namespace

void RadialProfile::validate() const {
  for (std::size_t k = 1; k < samples.size(); ++k)
    require(samples[k].r > samples[k - 1].r, ErrorCode::NonMonotoneR,
            "radii not strictly increasing at sample " + std::to_string(k));
}

RadialProfile shoot_bowl(int n, double r_max, double h) {
  check_inputs(n, r_max, h);
  require(r_max > 10.0 * h, ErrorCode::InvalidArgument, "r_max must exceed the series start 10 h");
  RadialProfile p;
  p.n = n;
  p.kind = RadialProfile::Kind::Bowl;
  p.h = h;
  // u'(r) = a r + c r^3 near the removable singularity at r = 0.
  const double a = -1.0 / n;
  const double c = -1.0 / (static_cast<double>(n) * n * n * (n + 2));
  p.samples.push_back({0.0, 0.0, 0.0, a, a});
  for (int k = 1; k <= 10; ++k) {
    const double r = k * h;
    const double slope = a * r + c * r * r * r;
    const double u = 0.5 * a * r * r + 0.25 * c * r * r * r * r;
    p.samples.push_back(make_sample(n, r, u, std::atan(slope)));
  }
  integrate_graph_phase(p, r_max, h);
  p.validate();
  return p;
}

CatenoidPair shoot_catenoid(int n, double lambda, double r_max, double h) {
  check_inputs(n, r_max, h);
  require(lambda > 0.0, ErrorCode::InvalidArgument, "neck radius lambda must be positive");
  require(r_max > lambda, ErrorCode::InvalidArgument, "r_max must exceed the neck radius");

  auto wing = [&](double psi0, RadialProfile::Kind kind) {
    RadialProfile p;
    p.n = n;
    p.kind = kind;
    p.lambda = lambda;
    p.h = h;
    p.samples.push_back(make_sample(n, lambda, 0.0, psi0));
    // Arclength phase: (r, u, psi)' = (cos psi, sin psi, -cos psi - (n-1) sin psi / r).
    auto rhs = [n](double, const std::array<double, 3>& y) {
      return std::array<double, 3>{std::cos(y[2]), std::sin(y[2]), profile_curvature(n, y[0], y[2])};
    };
    std::array<double, 3> y{lambda, 0.0, psi0};
    double s = 0.0;
    while (!(std::cos(y[2]) >= 0.05 && y[0] >= 1.5 * lambda) && y[0] < r_max) {
      const double ds = std::min(h, 0.01 * y[0]);
      const auto next = rk4<3>(rhs, s, y, ds);
      require(next[0] > y[0], ErrorCode::NonMonotoneR, "catenoid wing turned back toward the axis");
      y = next;
      s += ds;
      p.samples.push_back(make_sample(n, y[0], y[1], y[2]));
    }
    integrate_graph_phase(p, r_max, h);
    p.validate();
    return p;
  };
  return {wing(0.5 * kPi, RadialProfile::Kind::CatenoidUpper),
          wing(-0.5 * kPi, RadialProfile::Kind::CatenoidLower)};
}

RadialProfile profile_from_graph(int n, const std::vector<double>& radii,
                                 const std::function<std::array<double, 3>(double)>& f) {
  require(n >= 2, ErrorCode::InvalidArgument, "surface dimension n must be >= 2");
  RadialProfile p;
  p.n = n;
  p.kind = RadialProfile::Kind::Synthetic;
  p.h = radii.size() > 1 ? radii[1] - radii[0] : 0.0;
  for (double r : radii) {
    const auto [u, du, ddu] = f(r);
    const double W = std::sqrt(1.0 + du * du);
    const double krot = r > 0.0 ? du / (r * W) : ddu;
    p.samples.push_back({r, u, std::atan(du), ddu / (W * W * W), krot});
  }
  p.validate();
  return p;
}

namespace {

std::size_t bracket(const RadialProfile& p, double r) {
  require(!p.samples.empty() && r >= p.samples.front().r && r <= p.samples.back().r,
          ErrorCode::OutOfDomain, "radius " + std::to_string(r) + " outside the profile");
  auto it = std::upper_bound(p.samples.begin(), p.samples.end(), r,
                             [](double v, const RadialSample& s) { return v < s.r; });
  std::size_t k = static_cast<std::size_t>(it - p.samples.begin());
  if (k == 0) k = 1;
  if (k >= p.samples.size()) k = p.samples.size() - 1;
  return k - 1;
}

double hermite(double y0, double d0, double y1, double d1, double h, double t) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * d1;
}

}  // namespace

double value_at(const RadialProfile& p, double r) {
  const std::size_t k = bracket(p, r);
  const RadialSample& a = p.samples[k];
  const RadialSample& b = p.samples[k + 1];
  const double h = b.r - a.r;
  return hermite(a.u, std::tan(a.psi), b.u, std::tan(b.psi), h, (r - a.r) / h);
}

double slope_at(const RadialProfile& p, double r) {
  const std::size_t k = bracket(p, r);
  const RadialSample& a = p.samples[k];
  const RadialSample& b = p.samples[k + 1];
  const double h = b.r - a.r;
  // d psi / dr = kappa_p / cos psi on graph parts.
  const double psi = hermite(a.psi, a.kappaProfile / std::cos(a.psi), b.psi,
                             b.kappaProfile / std::cos(b.psi), h, (r - a.r) / h);
  return std::tan(psi);
}

GridFunction revolve_to_grid(const RadialProfile& p, int nx, int ny, double ax, double ay) {
  require(std::hypot(ax, ay) <= p.r_max(), ErrorCode::OutOfDomain, "grid corner beyond the profile");
  require(p.samples.front().r == 0.0, ErrorCode::InvalidArgument, "profile must start on the axis");
  return GridFunction::centered(nx, ny, ax, ay,
                                [&](double x, double y) { return value_at(p, std::hypot(x, y)); });
}

AsymptoticFit fit_asymptotics(const RadialProfile& p, double r_lo, double r_hi) {
  require(r_lo > 0.0 && r_hi >= 2.0 * r_lo, ErrorCode::WindowTooNarrow, "fit window needs r_hi >= 2 r_lo > 0");
  require(r_hi <= p.r_max() * (1.0 + 1e-12), ErrorCode::WindowTooNarrow, "fit window beyond the profile");
  std::vector<const RadialSample*> window;
  for (const RadialSample& s : p.samples)
    if (s.r >= r_lo * (1.0 - 1e-12) && s.r <= r_hi * (1.0 + 1e-12)) window.push_back(&s);
  require(window.size() >= 3, ErrorCode::WindowTooNarrow, "fewer than 3 samples in the fit window");

  // Columns scaled to O(1) for conditioning.
  const double s2 = r_hi * r_hi, sl = std::max(1.0, std::abs(std::log(r_hi)));
  Eigen::MatrixXd A(window.size(), 3);
  Eigen::VectorXd b(window.size());
  for (std::size_t k = 0; k < window.size(); ++k) {
    const double r = window[k]->r;
    A(k, 0) = r * r / s2;
    A(k, 1) = std::log(r) / sl;
    A(k, 2) = 1.0;
    b(k) = window[k]->u;
  }
  const Eigen::Vector3d x = A.colPivHouseholderQr().solve(b);
  AsymptoticFit fit;
  fit.quadCoeff = -x(0) / s2;
  fit.logCoeff = x(1) / sl;
  fit.constant = x(2);
  fit.rLo = r_lo;
  fit.rHi = r_hi;
  fit.samplesUsed = static_cast<int>(window.size());
  const Eigen::VectorXd res = A * x - b;
  fit.remainderBound = res.cwiseAbs().maxCoeff();

  // Remainder decay beyond the two displayed terms; differencing g(r) - g(2r)
  // removes the additive constant.
  const double lead = 0.5 / (p.n - 1);
  auto g = [&](double r) { return value_at(p, r) + lead * r * r - std::log(r); };
  std::vector<double> lx, ly;
  const int m = 64;
  for (int k = 0; k < m; ++k) {
    const double r = r_lo * std::pow(0.5 * r_hi / r_lo, static_cast<double>(k) / (m - 1));
    const double d = g(r) - g(2.0 * r);
    if (d != 0.0 && std::isfinite(d)) {
      lx.push_back(std::log(r));
      ly.push_back(std::log(std::abs(d)));
    }
  }
  if (lx.size() >= 3) {
    const double mx = compensated_sum(lx) / lx.size(), my = compensated_sum(ly) / ly.size();
    CompensatedSum sxy, sxx;
    for (std::size_t k = 0; k < lx.size(); ++k) {
      sxy.add((lx[k] - mx) * (ly[k] - my));
      sxx.add((lx[k] - mx) * (lx[k] - mx));
    }
    fit.remainderSlope = sxy.value() / sxx.value();
  } else {
    fit.remainderSlope = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

RadialIdentityReport radial_identities_report(const RadialProfile& p, double r_lo, double r_hi,
                                              double r_umb, double violation_tolerance) {
  require(p.n == 2, ErrorCode::InvalidArgument, "identity report is defined for surfaces in R^3 (n = 2)");
  require(r_lo >= r_umb, ErrorCode::UmbilicWindow,
          "window starts at r = " + std::to_string(r_lo) + " inside the umbilic radius");
  const auto& S = p.samples;
  RadialIdentityReport rep;
  for (std::size_t k = 1; k + 1 < S.size(); ++k) {
    if (S[k].r < r_lo || S[k].r > r_hi) continue;
    const RadialSample &a = S[k - 1], &c0 = S[k], &b = S[k + 1];
    const double kp = c0.kappaProfile, kr = c0.kappaRotation;
    const double k1 = std::max(kp, kr), k2 = std::min(kp, kr);
    require(k1 - k2 > umbilic_tolerance(k1, k2), ErrorCode::UmbilicWindow,
            "near-umbilic sample at r = " + std::to_string(c0.r));
    // An umbilic between samples shows up as a swap of the larger curvature.
    const bool profileLarger = kp > kr;
    if ((a.kappaProfile > a.kappaRotation) != profileLarger || (b.kappaProfile > b.kappaRotation) != profileLarger)
      fail(ErrorCode::UmbilicWindow, "principal curvatures cross near r = " + std::to_string(c0.r));

    const double h1 = c0.r - a.r, h2 = b.r - c0.r;
    auto d1 = [&](double fm, double f0, double fp) {
      return -h2 / (h1 * (h1 + h2)) * fm + (h2 - h1) / (h1 * h2) * f0 + h1 / (h2 * (h1 + h2)) * fp;
    };
    auto d2 = [&](double fm, double f0, double fp) {
      return 2.0 * (h2 * fm - (h1 + h2) * f0 + h1 * fp) / (h1 * h2 * (h1 + h2));
    };
    const double cs = std::cos(c0.psi), sn = std::sin(c0.psi), r = c0.r;
    // Delta^f f = f_ss + (cos psi / r) f_s - sin psi f_s, with d/ds = cos psi d/dr.
    auto drift = [&](double fm, double f0, double fp) {
      const double fr = d1(fm, f0, fp), frr = d2(fm, f0, fp);
      return cs * cs * frr - sn * kp * fr + cs * cs / r * fr - sn * cs * fr;
    };
    auto H = [](const RadialSample& s) { return s.kappaProfile + s.kappaRotation; };
    auto K1 = [](const RadialSample& s) { return std::max(s.kappaProfile, s.kappaRotation); };

    const double A2 = kp * kp + kr * kr;
    const double Hc = kp + kr;
    const double dkr_ds = cs * d1(a.kappaRotation, kr, b.kappaRotation);
    const double q2 = dkr_ds * dkr_ds;
    const double codazzi = (kp - kr) * cs / r;
    const double q2c = codazzi * codazzi;

    const double defH = drift(H(a), Hc, H(b)) + A2 * Hc;
    const double defK = drift(K1(a), k1, K1(b)) + A2 * k1 - 2.0 * q2 / (k1 - k2);
    rep.r.push_back(r);
    rep.defectDriftH.push_back(defH);
    rep.defectDriftK1.push_back(defK);
    rep.q2.push_back(q2);
    rep.q2Codazzi.push_back(q2c);
    rep.maxDefectH = std::max(rep.maxDefectH, std::abs(defH));
    rep.maxDefectK1 = std::max(rep.maxDefectK1, std::abs(defK));
    rep.maxKeyDefect = std::max(rep.maxKeyDefect, std::abs(std::sqrt(q2) - std::sqrt(q2c)));
  }
  require(!rep.r.empty(), ErrorCode::WindowTooNarrow, "no samples inside the identity window");
  rep.violation = rep.maxDefectH > violation_tolerance;
  return rep;
}

}  // namespace translab
