// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "translab/grid.hpp"

namespace translab {

/// Dirichlet problem for the translator equation on the truncated strip
/// [-L, L] x [-shrink b, shrink b]. The strip variable is y.
struct StripProblem {
  enum class Boundary {
    TiltedPair,  ///< min of the tilted grim reapers G_{+theta}, G_{-theta}, cos(theta) = pi / (2b)
    GrimReaper,  ///< log cos y (requires shrink * b < pi / 2)
    Clamped,     ///< -clampDepth (y / (shrink b))^2, for strips narrower than pi
    Custom,      ///< user supplied function
  };

  double b = 0.0;
  double L = 12.0;
  double shrink = 0.995;
  int nx = 33;
  int ny = 33;
  Boundary bc = Boundary::TiltedPair;
  double clampDepth = 8.0;
  std::function<double(double, double)> custom;

  void validate() const;
  /// Tilt of the asymptotic grim reapers; 0 unless bc == TiltedPair.
  double theta() const;
  /// Boundary data extended to every node (the exact Dirichlet rows).
  GridFunction boundary_data() const;
  double data(double x, double y) const;
};

struct SolverConfig {
  double tolResidual = 1e-9;
  int maxNewton = 50;
  double dampingMin = 1.0 / 1024.0;
  double linearTol = 1e-8;
  int continuationSteps = 8;
  bool verbose = false;
};

struct SolveReport {
  int iterations = 0;
  double finalResidualMax = 0.0;     ///< max |R / (1 + |Du|^2)| over interior nodes
  double finalRawResidualMax = 0.0;  ///< max |R|
  std::vector<double> dampingHistory;
  std::vector<double> residualHistory;  ///< max-norm before each Newton step, then final
  Eigen::Matrix2d centerHessian = Eigen::Matrix2d::Zero();
  Eigen::Vector2d centerEigenvalues = Eigen::Vector2d::Zero();  ///< ascending
  double k = 0.0;  ///< smaller eigenvalue magnitude of centerHessian
  bool concaveFlag = false;
  double maxHessianEigenvalue = 0.0;
  double concavityTol = 0.0;
  double symmetryDefect = 0.0;
  double boundaryGradientMax = 0.0;  ///< max |Du| on the first interior ring
  double asymptoteDefect = 0.0;      ///< max |u - G - c| / W_G for |x| >= L/2 (normal gap), NaN unless TiltedPair
  double b = 0.0;
  double theta = 0.0;
  bool usedFallback = false;
};

struct SolveResult {
  GridFunction u;
  SolveReport report;
};

/// Raw translator residual at interior nodes, ordered (i-1)*(ny-2) + (j-1).
Eigen::VectorXd assemble_residual(const GridFunction& u, const StripProblem& p);

/// Residual divided by (1 + |Du|^2); this is what Newton drives to zero.
Eigen::VectorXd assemble_scaled_residual(const GridFunction& u, const StripProblem& p);

SolveResult newton_solve(const StripProblem& p, const GridFunction& init, const SolverConfig& cfg);

/// Fills the post-convergence diagnostics of `rep` for solution u.
void diagnose(const GridFunction& u, const StripProblem& p, SolveReport& rep);

/// Initial guess: boundary data with 5 Jacobi smoothing sweeps on the interior.
GridFunction delta_wing_initial_guess(const StripProblem& p, int sweeps = 5);

SolveResult delta_wing(double b, double L, int nx, int ny, const SolverConfig& cfg, double shrink = 0.995);

struct ContinuationResult {
  std::vector<double> b;
  std::vector<double> k;
  std::vector<SolveReport> reports;
  int direction = 0;  ///< +1 if k strictly increases with step, -1 if strictly decreases, 0 otherwise
  GridFunction last;
};

ContinuationResult continuation_in_width(double b_start, double b_end, int steps, const SolverConfig& cfg,
                                         double L = 12.0, int nx = 97, int ny = 49, double shrink = 0.995);

struct NarrowStripProbe {
  double depth = 0.0;
  bool converged = false;
  int iterations = 0;
  double centerValue = 0.0;
  double boundaryGradientMax = 0.0;
};

/// Clamped-data solves on a strip of half-width b <= pi/2 for increasing
/// depths. Reports the proxies only; nothing is asserted about existence.
std::vector<NarrowStripProbe> probe_narrow_strip(double b, double L, int nx, int ny,
                                                 const std::vector<double>& depths, const SolverConfig& cfg);

}  // namespace translab
