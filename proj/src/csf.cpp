// SPDX-License-Identifier: Apache-2.0
#include "translab/csf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "translab/errors.hpp"
#include "translab/numerics.hpp"

namespace translab {

namespace {

/// Solves the cyclic tridiagonal system a_i x_{i-1} + b_i x_i + c_i x_{i+1} = d_i
/// (indices mod n) by Sherman-Morrison on the Thomas algorithm.
class CyclicTridiagonal {
 public:
  CyclicTridiagonal(std::vector<double> a, std::vector<double> b, std::vector<double> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    const std::size_t n = b_.size();
    gamma_ = -b_[0];
    alpha_ = c_[n - 1];
    beta_ = a_[0];
    b_[0] -= gamma_;
    b_[n - 1] -= alpha_ * beta_ / gamma_;
    // Forward elimination factors, reused for every right-hand side.
    cp_.resize(n);
    denom_.resize(n);
    denom_[0] = b_[0];
    cp_[0] = c_[0] / denom_[0];
    for (std::size_t i = 1; i < n; ++i) {
      denom_[i] = b_[i] - a_[i] * cp_[i - 1];
      cp_[i] = c_[i] / denom_[i];
    }
    std::vector<double> u(n, 0.0);
    u[0] = gamma_;
    u[n - 1] = alpha_;
    z_ = thomas(u);
    zfac_ = 1.0 + z_[0] + beta_ * z_[n - 1] / gamma_;
  }

  std::vector<double> solve(const std::vector<double>& d) const {
    std::vector<double> x = thomas(d);
    const std::size_t n = x.size();
    const double f = (x[0] + beta_ * x[n - 1] / gamma_) / zfac_;
    for (std::size_t i = 0; i < n; ++i) x[i] -= f * z_[i];
    return x;
  }

 private:
  std::vector<double> thomas(const std::vector<double>& d) const {
    const std::size_t n = d.size();
    std::vector<double> x(n);
    x[0] = d[0] / denom_[0];
    for (std::size_t i = 1; i < n; ++i) x[i] = (d[i] - a_[i] * x[i - 1]) / denom_[i];
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp_[i] * x[i + 1];
    return x;
  }

  std::vector<double> a_, b_, c_, cp_, denom_, z_;
  double gamma_ = 0.0, alpha_ = 0.0, beta_ = 0.0, zfac_ = 1.0;
};

std::vector<double> edge_lengths(const CurveState& c) {
  const std::size_t n = c.points.size();
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = (c.points[(i + 1) % n] - c.points[i]).norm();
  return e;
}

void check_resolution(const CurveState& c) {
  const std::vector<double> e = edge_lengths(c);
  const double mean = compensated_sum(e) / static_cast<double>(e.size());
  const double mn = *std::min_element(e.begin(), e.end());
  require(mn >= 1e-3 * mean, ErrorCode::ResolutionLost, "minimum edge fell below 1e-3 of the mean edge");
}

double median(std::vector<double> v) {
  const std::size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + m, v.end());
  double med = v[m];
  if (v.size() % 2 == 0) med = 0.5 * (med + *std::max_element(v.begin(), v.begin() + m));
  return med;
}

std::size_t window_start(std::size_t n) { return n - static_cast<std::size_t>(std::ceil(0.3 * n)); }

double point_segment_distance2(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + s * ab)).squaredNorm();
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(q2 - q1, p1 - q1), d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1), d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

void FlowConfig::validate() const {
  require(dtSafety > 0.0 && dtSafety <= 1.0, ErrorCode::InvalidArgument, "dtSafety must lie in (0, 1]");
  require(remeshEvery >= 1, ErrorCode::InvalidArgument, "remeshEvery must be >= 1");
  require(stopAmax > 0.0, ErrorCode::InvalidArgument, "stopAmax must be positive");
  require(maxSteps >= 1, ErrorCode::InvalidArgument, "maxSteps must be >= 1");
}

std::string to_string(TypeVerdict::Kind k) {
  switch (k) {
    case TypeVerdict::Kind::TypeI: return "TypeI";
    case TypeVerdict::Kind::TypeII: return "TypeII";
    case TypeVerdict::Kind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

double flow_dt(const CurveState& c, const FlowConfig& cfg) {
  const std::vector<double> e = edge_lengths(c);
  const double mn = *std::min_element(e.begin(), e.end());
  return cfg.dtSafety * mn * mn / 2.0;
}

CurveState step_with_dt(const CurveState& c, double dt, const FlowConfig& cfg) {
  c.validate();
  cfg.validate();
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::InvalidArgument, "time step must be positive");
  const std::size_t n = c.points.size();
  const std::vector<double> e = edge_lengths(c);
  std::vector<double> a(n), b(n), cc(n), dx(n), dy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lm = e[(i + n - 1) % n], lp = e[i];
    const double w = 2.0 / (lm + lp);
    a[i] = -dt * w / lm;
    cc[i] = -dt * w / lp;
    b[i] = 1.0 - a[i] - cc[i];
    dx[i] = c.points[i].x();
    dy[i] = c.points[i].y();
  }
  const CyclicTridiagonal sys(std::move(a), std::move(b), std::move(cc));
  const std::vector<double> x = sys.solve(dx), y = sys.solve(dy);
  CurveState out;
  out.closed = true;
  out.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.points[i] = Vec2(x[i], y[i]);
  out.t = c.t + dt;
  out.steps = c.steps + 1;
  if (out.steps % static_cast<std::size_t>(cfg.remeshEvery) == 0) {
    out = remesh(out);
    check_resolution(out);
  }
  return out;
}

CurveState step(const CurveState& c, const FlowConfig& cfg) { return step_with_dt(c, flow_dt(c, cfg), cfg); }

CurveState remesh(const CurveState& c) {
  c.validate();
  const std::size_t n = c.points.size();
  const std::vector<double> h = edge_lengths(c);
  std::vector<double> knot(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) knot[i + 1] = knot[i] + h[i];
  const double period = knot[n];

  // Periodic spline moments M_i for each coordinate.
  std::vector<double> a(n), b(n), cc(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hm = h[(i + n - 1) % n], hp = h[i];
    a[i] = hm;
    b[i] = 2.0 * (hm + hp);
    cc[i] = hp;
  }
  const CyclicTridiagonal sys(a, b, cc);
  std::vector<double> Mx, My;
  for (int d = 0; d < 2; ++d) {
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
      rhs[i] = 6.0 * ((c.points[ip][d] - c.points[i][d]) / h[i] - (c.points[i][d] - c.points[im][d]) / h[im]);
    }
    (d == 0 ? Mx : My) = sys.solve(rhs);
  }

  CurveState out = c;
  std::size_t seg = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const double s = period * static_cast<double>(k) / static_cast<double>(n);
    while (seg + 1 < n && knot[seg + 1] <= s) ++seg;
    const std::size_t ip = (seg + 1) % n;
    const double hs = h[seg];
    const double A = (knot[seg + 1] - s) / hs, B = 1.0 - A;
    for (int d = 0; d < 2; ++d) {
      const std::vector<double>& M = d == 0 ? Mx : My;
      out.points[k][d] = A * c.points[seg][d] + B * c.points[ip][d] +
                         ((A * A * A - A) * M[seg] + (B * B * B - B) * M[ip]) * hs * hs / 6.0;
    }
  }
  return out;
}

double fit_extinction_time(const SingularityLog& log, std::size_t from) {
  require(log.size() >= from + 2, ErrorCode::InsufficientData, "need at least two samples to fit T");
  const std::size_t m = log.size() - from;
  // Centre t for conditioning.
  CompensatedSum st, sy;
  for (std::size_t k = from; k < log.size(); ++k) {
    st.add(log.times[k]);
    sy.add(1.0 / (log.Amax[k] * log.Amax[k]));
  }
  const double tm = st.value() / m, ym = sy.value() / m;
  CompensatedSum sxx, sxy;
  for (std::size_t k = from; k < log.size(); ++k) {
    const double dt = log.times[k] - tm;
    sxx.add(dt * dt);
    sxy.add(dt * (1.0 / (log.Amax[k] * log.Amax[k]) - ym));
  }
  require(sxx.value() > 0.0, ErrorCode::InsufficientData, "fit window has no time spread");
  const double slope = sxy.value() / sxx.value();
  require(slope < 0.0, ErrorCode::InsufficientData, "1/Amax^2 is not decreasing over the fit window");
  return tm - ym / slope;
}

TypeVerdict classify(const SingularityLog& log) {
  require(std::isfinite(log.fittedT) && log.fittedT > 0.0, ErrorCode::InsufficientData, "log has no fitted T");
  const std::size_t from = window_start(log.size());
  std::vector<double> s;
  for (std::size_t k = from; k < log.size(); ++k)
    if (log.times[k] < log.fittedT) s.push_back(log.Amax[k] * std::sqrt(log.fittedT - log.times[k]));
  require(s.size() >= 20, ErrorCode::InsufficientData,
          "classification needs >= 20 window samples, got " + std::to_string(s.size()));
  TypeVerdict v;
  const double smax = *std::max_element(s.begin(), s.end());
  v.ratio = smax / median(s);
  if (v.ratio <= 3.0) {
    v.kind = TypeVerdict::Kind::TypeI;
    v.Climsup = std::sqrt(2.0) * smax;
    return v;
  }
  const bool monotone = std::is_sorted(s.begin(), s.end());
  v.kind = monotone && s.back() >= 10.0 * s.front() ? TypeVerdict::Kind::TypeII : TypeVerdict::Kind::Inconclusive;
  return v;
}

SingularityLog run(const CurveState& c0, const FlowConfig& cfg) {
  cfg.validate();
  c0.validate();
  SingularityLog log;
  CurveState c = remesh(c0);
  auto record = [&](const CurveState& cur) {
    const CurveGeometry g = curve_geometry(cur);
    if (!log.length.empty() && !(g.length < log.length.back())) log.lengthMonotone = false;
    log.times.push_back(cur.t);
    log.Amax.push_back(g.Amax);
    log.length.push_back(g.length);
    log.area.push_back(g.enclosedArea);
    return g.Amax;
  };
  double amax = record(c);
  log.stopReason = "maxSteps";
  for (std::size_t k = 0; k < cfg.maxSteps; ++k) {
    if (amax >= cfg.stopAmax) {
      log.stopReason = "stopAmax";
      break;
    }
    try {
      c = step(c, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResolutionLost) throw;
      log.stopReason = "ResolutionLost";
      break;
    }
    amax = record(c);
  }
  if (log.stopReason == "maxSteps" && amax >= cfg.stopAmax) log.stopReason = "stopAmax";

  for (std::size_t k = 1; k < log.size(); ++k) {
    const double rate = (log.area[k] - log.area[k - 1]) / (log.times[k] - log.times[k - 1]);
    log.areaRateMaxDeviation = std::max(log.areaRateMaxDeviation, std::abs(rate / (-2.0 * kPi) - 1.0));
  }
  log.windowStart = window_start(log.size());
  try {
    log.fittedT = fit_extinction_time(log, log.windowStart);
    log.verdict = classify(log);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientData) throw;
    if (!(log.fittedT > 0.0)) log.fittedT = std::numeric_limits<double>::quiet_NaN();
    log.verdict = TypeVerdict{};
  }
  return log;
}

CurveState run_until(const CurveState& c0, double t_end, const FlowConfig& cfg) {
  cfg.validate();
  c0.validate();
  require(t_end >= c0.t, ErrorCode::InvalidArgument, "t_end lies before the curve's time");
  CurveState c = remesh(c0);
  for (std::size_t k = 0; k < cfg.maxSteps && c.t < t_end; ++k) {
    const double dt = std::min(flow_dt(c, cfg), t_end - c.t);
    c = step_with_dt(c, dt, cfg);
    if (t_end - c.t <= 1e-15 * std::max(1.0, t_end)) c.t = t_end;
  }
  return c;
}

double curve_distance(const CurveState& a, const CurveState& b) {
  double best = std::numeric_limits<double>::infinity();
  auto one_way = [&](const CurveState& p, const CurveState& q) {
    const std::size_t m = q.points.size();
    for (const Vec2& v : p.points)
      for (std::size_t k = 0; k < m; ++k)
        best = std::min(best, point_segment_distance2(v, q.points[k], q.points[(k + 1) % m]));
  };
  one_way(a, b);
  one_way(b, a);
  return std::sqrt(best);
}

bool curves_intersect(const CurveState& a, const CurveState& b) {
  const std::size_t na = a.points.size(), nb = b.points.size();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nb; ++k)
      if (segments_cross(a.points[i], a.points[(i + 1) % na], b.points[k], b.points[(k + 1) % nb])) return true;
  return false;
}

ComparisonResult comparison_check(const CurveState& a0, const CurveState& b0, const FlowConfig& cfg,
                                  int sampleEvery) {
  cfg.validate();
  a0.validate();
  b0.validate();
  require(sampleEvery >= 1, ErrorCode::InvalidArgument, "sampleEvery must be >= 1");
  require(!curves_intersect(a0, b0), ErrorCode::Precondition, "curves are not disjoint at t = 0");
  ComparisonResult out;
  const CurveGeometry ga = curve_geometry(a0), gb = curve_geometry(b0);
  const double h = std::max(ga.meanEdge, gb.meanEdge);
  out.allowance = 10.0 * std::max(ga.Amax, gb.Amax) * h * h;
  out.initialDistance = curve_distance(a0, b0);
  out.times.push_back(a0.t);
  out.distance.push_back(out.initialDistance);

  CurveState a = remesh(a0), b = remesh(b0);
  for (std::size_t k = 1; k <= cfg.maxSteps; ++k) {
    const double dt = std::min(flow_dt(a, cfg), flow_dt(b, cfg));
    try {
      a = step_with_dt(a, dt, cfg);
      b = step_with_dt(b, dt, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResolutionLost) throw;
      break;
    }
    const double amax = std::max(curve_geometry(a).Amax, curve_geometry(b).Amax);
    if (k % static_cast<std::size_t>(sampleEvery) == 0 || amax >= cfg.stopAmax) {
      out.times.push_back(a.t);
      out.distance.push_back(curve_distance(a, b));
    }
    if (amax >= cfg.stopAmax) break;
  }
  out.minDistance = *std::min_element(out.distance.begin(), out.distance.end());
  out.pass = out.minDistance >= out.initialDistance - out.allowance;
  return out;
}

Roundness roundness(const CurveState& c) {
  const CurveGeometry g = curve_geometry(c);
  const auto [mn, mx] = std::minmax_element(g.kappa.begin(), g.kappa.end());
  Roundness r;
  if (*mn > 0.0) {
    r.ratio = *mx / *mn;
    return r;
  }
  r.nonConvex = true;
  double amin = std::numeric_limits<double>::infinity(), amax = 0.0;
  for (double k : g.kappa) {
    amin = std::min(amin, std::abs(k));
    amax = std::max(amax, std::abs(k));
  }
  r.ratio = amax / amin;
  return r;
}

}  // namespace translab
