// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "translab/geom.hpp"

namespace translab {

struct FlowConfig {
  double dtSafety = 0.4;
  int remeshEvery = 5;
  double stopAmax = 1e4;
  std::size_t maxSteps = 5'000'000;

  void validate() const;
};

struct TypeVerdict {
  enum class Kind { TypeI, TypeII, Inconclusive };
  Kind kind = Kind::Inconclusive;
  double Climsup = 0.0;  ///< sqrt(2) max s over the window (TypeI only)
  double ratio = 0.0;    ///< max s / median s over the window
};

std::string to_string(TypeVerdict::Kind k);

struct SingularityLog {
  std::vector<double> times;
  std::vector<double> Amax;
  std::vector<double> length;
  std::vector<double> area;
  double fittedT = 0.0;
  std::size_t windowStart = 0;  ///< first sample of the fit window (final 30%)
  TypeVerdict verdict;
  bool lengthMonotone = true;
  double areaRateMaxDeviation = 0.0;  ///< max |(dA/dt) / (-2 pi) - 1| between samples
  std::string stopReason;

  std::size_t size() const { return times.size(); }
};

/// Time step the stepper would take on c.
double flow_dt(const CurveState& c, const FlowConfig& cfg);

/// One semi-implicit step of size flow_dt, remeshing every cfg.remeshEvery steps.
CurveState step(const CurveState& c, const FlowConfig& cfg);
CurveState step_with_dt(const CurveState& c, double dt, const FlowConfig& cfg);

/// Resample uniformly in arclength on the periodic cubic spline through the
/// vertices (chord-length knots). Vertex 0 is kept.
CurveState remesh(const CurveState& c);

/// Flow from remesh(c0) until Amax >= stopAmax, maxSteps, or resolution loss;
/// then fit T and classify.
SingularityLog run(const CurveState& c0, const FlowConfig& cfg);

/// Flow until time t_end (last step shortened to land on it).
CurveState run_until(const CurveState& c0, double t_end, const FlowConfig& cfg);

/// Least-squares fit of 1/Amax^2 = alpha - beta t over samples [from, end); returns alpha/beta.
double fit_extinction_time(const SingularityLog& log, std::size_t from);

/// Limsup test on s = Amax sqrt(fittedT - t) over the final window. Throws InsufficientData.
TypeVerdict classify(const SingularityLog& log);

struct ComparisonResult {
  std::vector<double> times;
  std::vector<double> distance;
  double initialDistance = 0.0;
  double allowance = 0.0;  ///< 10 kappa_max h^2 at t = 0
  double minDistance = 0.0;
  bool pass = false;
};

/// Minimum vertex-to-segment distance between two closed polylines.
double curve_distance(const CurveState& a, const CurveState& b);

/// True if any edge of a crosses any edge of b.
bool curves_intersect(const CurveState& a, const CurveState& b);

/// Co-evolves a and b with a common dt until the first extinction.
ComparisonResult comparison_check(const CurveState& a, const CurveState& b, const FlowConfig& cfg,
                                  int sampleEvery = 20);

struct Roundness {
  double ratio = 0.0;  ///< max kappa / min kappa (|kappa| extremes if nonConvex)
  bool nonConvex = false;
};

Roundness roundness(const CurveState& c);

}  // namespace translab
