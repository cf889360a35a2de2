// SPDX-License-Identifier: Apache-2.0
#include "translab/elliptic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "translab/catalog.hpp"
#include "translab/errors.hpp"
#include "translab/numerics.hpp"

namespace translab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int unknown_count(const StripProblem& p) { return (p.nx - 2) * (p.ny - 2); }
int unknown_index(const StripProblem& p, int i, int j) { return (i - 1) * (p.ny - 2) + (j - 1); }

void check_shape(const GridFunction& u, const StripProblem& p) {
  const GridFunction ref = GridFunction::centered(p.nx, p.ny, p.L, p.shrink * p.b, [](double, double) { return 0.0; });
  require(u.same_grid(ref, 1e-10), ErrorCode::ShapeMismatch, "grid does not match the strip problem");
}

/// Translator operator divided by (1 + |Du|^2), with its partial derivatives.
struct ScaledOperator {
  double F;
  double dp, dq, dxx, dxy, dyy;
};

ScaledOperator scaled_operator(const Jet& j) {
  const double p = j.ux, q = j.uy;
  const double W2 = 1.0 + p * p + q * q;
  const double S = (1.0 + q * q) * j.uxx - 2.0 * p * q * j.uxy + (1.0 + p * p) * j.uyy;
  ScaledOperator op;
  op.F = S / W2 + 1.0;
  op.dxx = (1.0 + q * q) / W2;
  op.dxy = -2.0 * p * q / W2;
  op.dyy = (1.0 + p * p) / W2;
  op.dp = (-2.0 * q * j.uxy + 2.0 * p * j.uyy) / W2 - 2.0 * p * S / (W2 * W2);
  op.dq = (2.0 * q * j.uxx - 2.0 * p * j.uxy) / W2 - 2.0 * q * S / (W2 * W2);
  return op;
}

Eigen::SparseMatrix<double> assemble_jacobian(const GridFunction& u, const StripProblem& p) {
  const int n = unknown_count(p);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 9);
  const double hx = u.hx, hy = u.hy;
  for (int i = 1; i < p.nx - 1; ++i) {
    for (int j = 1; j < p.ny - 1; ++j) {
      const ScaledOperator op = scaled_operator(central_jet(u, i, j));
      const int row = unknown_index(p, i, j);
      auto add = [&](int a, int b, double w) {
        const int ii = i + a, jj = j + b;
        if (ii <= 0 || jj <= 0 || ii >= p.nx - 1 || jj >= p.ny - 1) return;  // Dirichlet node
        if (w != 0.0) trip.emplace_back(row, unknown_index(p, ii, jj), w);
      };
      const double cxy = op.dxy / (4.0 * hx * hy);
      add(0, 0, -2.0 * op.dxx / (hx * hx) - 2.0 * op.dyy / (hy * hy));
      add(1, 0, op.dxx / (hx * hx) + op.dp / (2.0 * hx));
      add(-1, 0, op.dxx / (hx * hx) - op.dp / (2.0 * hx));
      add(0, 1, op.dyy / (hy * hy) + op.dq / (2.0 * hy));
      add(0, -1, op.dyy / (hy * hy) - op.dq / (2.0 * hy));
      add(1, 1, cxy);
      add(1, -1, -cxy);
      add(-1, 1, -cxy);
      add(-1, -1, cxy);
    }
  }
  Eigen::SparseMatrix<double> J(n, n);
  J.setFromTriplets(trip.begin(), trip.end());
  J.makeCompressed();
  return J;
}

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double norm2(const Eigen::VectorXd& v) {
  CompensatedSum s;
  for (Eigen::Index k = 0; k < v.size(); ++k) s.add(v[k] * v[k]);
  return std::sqrt(s.value());
}

void apply_update(GridFunction& u, const StripProblem& p, const Eigen::VectorXd& delta, double alpha) {
  for (int i = 1; i < p.nx - 1; ++i)
    for (int j = 1; j < p.ny - 1; ++j) u(i, j) += alpha * delta[unknown_index(p, i, j)];
}

}  // namespace

void StripProblem::validate() const {
  require(b > 0.0, ErrorCode::InvalidArgument, "strip half-width b must be positive");
  require(L >= 4.0, ErrorCode::InvalidArgument, "truncation length L must be >= 4");
  require(shrink >= 0.9 && shrink < 1.0, ErrorCode::InvalidArgument, "shrink must lie in [0.9, 1)");
  require(nx >= 33 && ny >= 33, ErrorCode::InvalidArgument, "resolution must be at least 33x33");
  if (bc == Boundary::TiltedPair)
    require(b > 0.5 * kPi, ErrorCode::InvalidArgument, "tilted-pair data needs b > pi/2");
  if (bc == Boundary::GrimReaper)
    require(shrink * b < 0.5 * kPi, ErrorCode::InvalidArgument, "grim reaper data needs shrink*b < pi/2");
  if (bc == Boundary::Custom) require(static_cast<bool>(custom), ErrorCode::InvalidArgument, "custom data missing");
}

double StripProblem::theta() const {
  if (bc != Boundary::TiltedPair) return 0.0;
  return std::acos(0.5 * kPi / b);
}

double StripProblem::data(double x, double y) const {
  switch (bc) {
    case Boundary::TiltedPair: {
      const AnalyticTranslator g = AnalyticTranslator::tilted(theta());
      // G_{+theta}(x, y) travels along -x, G_{-theta} along +x.
      return std::min(evaluate(g, y, x).u, evaluate(g, y, -x).u);
    }
    case Boundary::GrimReaper:
      return evaluate(AnalyticTranslator::grim_reaper(), y, 0.0).u;
    case Boundary::Clamped: {
      const double eta = y / (shrink * b);
      return -clampDepth * eta * eta;
    }
    case Boundary::Custom:
      return custom(x, y);
  }
  return 0.0;
}

GridFunction StripProblem::boundary_data() const {
  validate();
  return GridFunction::centered(nx, ny, L, shrink * b, [this](double x, double y) { return data(x, y); });
}

Eigen::VectorXd assemble_residual(const GridFunction& u, const StripProblem& p) {
  check_shape(u, p);
  Eigen::VectorXd r(unknown_count(p));
  for (int i = 1; i < p.nx - 1; ++i)
    for (int j = 1; j < p.ny - 1; ++j) r[unknown_index(p, i, j)] = pde_residual(central_jet(u, i, j));
  return r;
}

Eigen::VectorXd assemble_scaled_residual(const GridFunction& u, const StripProblem& p) {
  check_shape(u, p);
  Eigen::VectorXd r(unknown_count(p));
  for (int i = 1; i < p.nx - 1; ++i)
    for (int j = 1; j < p.ny - 1; ++j) r[unknown_index(p, i, j)] = scaled_operator(central_jet(u, i, j)).F;
  return r;
}

SolveResult newton_solve(const StripProblem& p, const GridFunction& init, const SolverConfig& cfg) {
  p.validate();
  check_shape(init, p);
  init.validate();
  require(cfg.tolResidual > 0.0 && cfg.maxNewton >= 1, ErrorCode::InvalidArgument, "invalid solver config");
  const GridFunction data = p.boundary_data();
  for (int i = 0; i < p.nx; ++i)
    for (int j = 0; j < p.ny; ++j) {
      if (i > 0 && j > 0 && i < p.nx - 1 && j < p.ny - 1) continue;
      if (init(i, j) != data(i, j))
        fail(ErrorCode::Precondition, "initial guess does not match the Dirichlet data at node (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
    }

  SolveResult out{init, {}};
  GridFunction& u = out.u;
  SolveReport& rep = out.report;
  rep.b = p.b;
  rep.theta = p.theta();

  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  bool pattern_ready = false;
  Eigen::VectorXd F = assemble_scaled_residual(u, p);
  double fnorm = norm2(F);
  for (;;) {
    const double fmax = max_abs(F);
    rep.residualHistory.push_back(fmax);
    if (cfg.verbose) std::fprintf(stderr, "newton %2d  |F|max %.3e  |F|2 %.3e\n", rep.iterations, fmax, fnorm);
    if (fmax <= cfg.tolResidual) break;
    if (rep.iterations >= cfg.maxNewton)
      fail(ErrorCode::MaxIterations, "Newton did not converge in " + std::to_string(cfg.maxNewton) +
                                         " iterations (|F|max = " + std::to_string(fmax) + ")");
    const Eigen::SparseMatrix<double> J = assemble_jacobian(u, p);
    if (!pattern_ready) {
      lu.analyzePattern(J);
      pattern_ready = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) fail(ErrorCode::LinearSolveFailure, "sparse LU factorization failed");
    Eigen::VectorXd delta = lu.solve(-F);
    if (lu.info() != Eigen::Success || !delta.allFinite())
      fail(ErrorCode::LinearSolveFailure, "sparse LU solve failed");
    // One step of iterative refinement.
    Eigen::VectorXd lin = J * delta + F;
    delta -= lu.solve(lin);
    lin = J * delta + F;
    const double rel = norm2(lin) / std::max(fnorm, std::numeric_limits<double>::min());
    if (!(rel <= cfg.linearTol))
      fail(ErrorCode::LinearSolveFailure, "linear residual " + std::to_string(rel) + " above linearTol");

    double alpha = 1.0;
    for (;;) {
      GridFunction trial = u;
      apply_update(trial, p, delta, alpha);
      Eigen::VectorXd Ft = assemble_scaled_residual(trial, p);
      const double tn = norm2(Ft);
      if (std::isfinite(tn) && tn <= (1.0 - 1e-4 * alpha) * fnorm) {
        u = std::move(trial);
        F = std::move(Ft);
        fnorm = tn;
        break;
      }
      alpha *= 0.5;
      if (alpha < cfg.dampingMin)
        fail(ErrorCode::NewtonStalled, "line search hit the damping floor at iteration " +
                                           std::to_string(rep.iterations + 1));
    }
    rep.dampingHistory.push_back(alpha);
    ++rep.iterations;
  }
  rep.finalResidualMax = max_abs(F);
  rep.finalRawResidualMax = max_abs(assemble_residual(u, p));
  diagnose(u, p, rep);
  return out;
}

void diagnose(const GridFunction& u, const StripProblem& p, SolveReport& rep) {
  const int ci = (p.nx - 1) / 2, cj = (p.ny - 1) / 2;
  const Jet c = central_jet(u, ci, cj);
  rep.centerHessian << c.uxx, c.uxy, c.uxy, c.uyy;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(rep.centerHessian, Eigen::EigenvaluesOnly);
  rep.centerEigenvalues = es.eigenvalues();
  rep.k = std::min(std::abs(rep.centerEigenvalues[0]), std::abs(rep.centerEigenvalues[1]));

  double max_norm = 0.0, max_eig = -std::numeric_limits<double>::infinity();
  double grad_ring = 0.0;
  for (int i = 1; i < p.nx - 1; ++i) {
    for (int j = 1; j < p.ny - 1; ++j) {
      const Jet jet = central_jet(u, i, j);
      const double m = 0.5 * (jet.uxx + jet.uyy);
      const double r = std::hypot(0.5 * (jet.uxx - jet.uyy), jet.uxy);
      max_norm = std::max(max_norm, std::abs(m) + r);
      max_eig = std::max(max_eig, m + r);
      if (i == 1 || j == 1 || i == p.nx - 2 || j == p.ny - 2)
        grad_ring = std::max(grad_ring, std::hypot(jet.ux, jet.uy));
    }
  }
  rep.concavityTol = 1e-6 * max_norm;
  rep.maxHessianEigenvalue = max_eig;
  rep.concaveFlag = max_eig <= rep.concavityTol;
  rep.boundaryGradientMax = grad_ring;

  double sym = 0.0;
  for (int i = 0; i < p.nx; ++i)
    for (int j = 0; j < p.ny; ++j) {
      sym = std::max(sym, std::abs(u(i, j) - u(p.nx - 1 - i, j)));
      sym = std::max(sym, std::abs(u(i, j) - u(i, p.ny - 1 - j)));
    }
  rep.symmetryDefect = sym;

  rep.asymptoteDefect = kNaN;
  if (p.bc == StripProblem::Boundary::TiltedPair) {
    const AnalyticTranslator g = AnalyticTranslator::tilted(p.theta());
    double worst = 0.0;
    for (int side : {1, -1}) {
      std::vector<double> diff, weight;
      for (int i = 1; i < p.nx - 1; ++i) {
        const double x = u.x(i);
        if (side * x < 0.5 * p.L) continue;
        for (int j = 1; j < p.ny - 1; ++j) {
          const Jet gj = evaluate(g, u.y(j), side * x);
          diff.push_back(u(i, j) - gj.u);
          weight.push_back(1.0 / std::sqrt(1.0 + gj.ux * gj.ux + gj.uy * gj.uy));
        }
      }
      if (diff.empty()) continue;
      const double shift = compensated_sum(diff) / static_cast<double>(diff.size());
      for (std::size_t k = 0; k < diff.size(); ++k) worst = std::max(worst, std::abs(diff[k] - shift) * weight[k]);
    }
    rep.asymptoteDefect = worst;
  }
}

GridFunction delta_wing_initial_guess(const StripProblem& p, int sweeps) {
  GridFunction u = p.boundary_data();
  const double wx = u.hy * u.hy, wy = u.hx * u.hx;
  const double denom = 2.0 * (wx + wy);
  for (int s = 0; s < sweeps; ++s) {
    GridFunction prev = u;
    for (int i = 1; i < p.nx - 1; ++i)
      for (int j = 1; j < p.ny - 1; ++j)
        u(i, j) = (wx * (prev(i + 1, j) + prev(i - 1, j)) + wy * (prev(i, j + 1) + prev(i, j - 1))) / denom;
  }
  return u;
}

namespace {

StripProblem wing_problem(double b, double L, int nx, int ny, double shrink) {
  StripProblem p;
  p.b = b;
  p.L = L;
  p.nx = nx;
  p.ny = ny;
  p.shrink = shrink;
  p.bc = StripProblem::Boundary::TiltedPair;
  p.validate();
  return p;
}

/// Init for problem `to` from a converged solution of `from` on the same
/// index grid: new data plus the old interior correction.
GridFunction transfer(const GridFunction& u_from, const StripProblem& from, const StripProblem& to) {
  const GridFunction d_from = from.boundary_data();
  GridFunction init = to.boundary_data();
  for (int i = 1; i < to.nx - 1; ++i)
    for (int j = 1; j < to.ny - 1; ++j) init(i, j) += u_from(i, j) - d_from(i, j);
  return init;
}

}  // namespace

SolveResult delta_wing(double b, double L, int nx, int ny, const SolverConfig& cfg, double shrink) {
  require(b > 0.5 * kPi, ErrorCode::InvalidArgument, "Delta-wing needs b > pi/2");
  const StripProblem p = wing_problem(b, L, nx, ny, shrink);
  try {
    return newton_solve(p, delta_wing_initial_guess(p), cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NewtonStalled && e.code() != ErrorCode::MaxIterations) throw;
  }
  // Fallback: continue from nearly grim-reaper data.
  const double b0 = 0.5 * kPi + 0.02;
  ContinuationResult c = continuation_in_width(b0, b, std::max(1, cfg.continuationSteps), cfg, L, nx, ny, shrink);
  SolveResult out{std::move(c.last), c.reports.back()};
  out.report.usedFallback = true;
  return out;
}

ContinuationResult continuation_in_width(double b_start, double b_end, int steps, const SolverConfig& cfg,
                                         double L, int nx, int ny, double shrink) {
  require(steps >= 1, ErrorCode::InvalidArgument, "continuation needs at least one step");
  require(b_start > 0.5 * kPi && b_end > 0.5 * kPi, ErrorCode::InvalidArgument,
          "continuation endpoints must exceed pi/2");
  ContinuationResult out;
  StripProblem prev = wing_problem(b_start, L, nx, ny, shrink);
  SolveResult cur = newton_solve(prev, delta_wing_initial_guess(prev), cfg);
  out.b.push_back(b_start);
  out.k.push_back(cur.report.k);
  out.reports.push_back(cur.report);

  auto solve_from = [&](const SolveResult& base, const StripProblem& from, double b) {
    const StripProblem to = wing_problem(b, L, nx, ny, shrink);
    return std::make_pair(newton_solve(to, transfer(base.u, from, to), cfg), to);
  };

  const double db = (b_end - b_start) / steps;
  for (int s = 1; s <= steps; ++s) {
    const double b = b_start + s * db;
    try {
      auto [res, prob] = solve_from(cur, prev, b);
      cur = std::move(res);
      prev = prob;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NewtonStalled && e.code() != ErrorCode::MaxIterations) throw;
      try {
        auto [mid, mid_prob] = solve_from(cur, prev, b - 0.5 * db);
        auto [res, prob] = solve_from(mid, mid_prob, b);
        cur = std::move(res);
        prev = prob;
      } catch (const Error& e2) {
        fail(ErrorCode::ContinuationBroken, "continuation failed at b = " + std::to_string(b) + ": " + e2.what());
      }
    }
    out.b.push_back(b);
    out.k.push_back(cur.report.k);
    out.reports.push_back(cur.report);
  }
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < out.k.size(); ++i) {
    inc = inc && out.k[i] > out.k[i - 1];
    dec = dec && out.k[i] < out.k[i - 1];
  }
  out.direction = out.k.size() < 2 ? 0 : (inc ? 1 : (dec ? -1 : 0));
  out.last = std::move(cur.u);
  return out;
}

std::vector<NarrowStripProbe> probe_narrow_strip(double b, double L, int nx, int ny,
                                                 const std::vector<double>& depths, const SolverConfig& cfg) {
  require(b > 0.0 && b <= 0.5 * kPi, ErrorCode::InvalidArgument, "narrow-strip probe needs 0 < b <= pi/2");
  std::vector<NarrowStripProbe> out;
  for (double depth : depths) {
    StripProblem p;
    p.b = b;
    p.L = L;
    p.nx = nx;
    p.ny = ny;
    p.bc = StripProblem::Boundary::Clamped;
    p.clampDepth = depth;
    NarrowStripProbe probe;
    probe.depth = depth;
    try {
      SolveResult r = newton_solve(p, delta_wing_initial_guess(p, 0), cfg);
      probe.converged = true;
      probe.iterations = r.report.iterations;
      probe.centerValue = r.u((nx - 1) / 2, (ny - 1) / 2);
      probe.boundaryGradientMax = r.report.boundaryGradientMax;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NewtonStalled && e.code() != ErrorCode::MaxIterations &&
          e.code() != ErrorCode::LinearSolveFailure)
        throw;
    }
    out.push_back(probe);
  }
  return out;
}

}  // namespace translab
