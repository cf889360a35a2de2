// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "translab/grid.hpp"

namespace translab {

/// Closed-form translators moving in direction -e3.
struct AnalyticTranslator {
  enum class Kind { GrimReaper, TiltedGrimReaper, VerticalPlane };

  Kind kind = Kind::GrimReaper;
  double theta = 0.0;  ///< tilt angle in [0, pi/2); 0 for the grim reaper

  static AnalyticTranslator grim_reaper() { return {Kind::GrimReaper, 0.0}; }
  static AnalyticTranslator tilted(double theta);
  static AnalyticTranslator vertical_plane() { return {Kind::VerticalPlane, 0.0}; }

  bool is_graph() const { return kind != Kind::VerticalPlane; }
  /// Strip (-w, w) in the x variable, w = pi / (2 cos theta).
  double half_width() const;
};

/// Points closer than this to the strip edge (in the x cos(theta) variable)
/// are rejected.
inline constexpr double kDomainGuard = 1e-9;

/// Exact jet of u = sec^2(theta) log cos(x cos theta) - tan(theta) y.
/// Throws OutOfDomain near or beyond the strip edge and InvalidArgument for
/// the vertical plane (not a graph).
Jet evaluate(const AnalyticTranslator& t, double x, double y);

/// (1+u_y^2) u_xx - 2 u_x u_y u_xy + (1+u_x^2) u_yy + u_x^2 + u_y^2 + 1.
double pde_residual(const Jet& jet);

struct PointResidual {
  double value = 0.0;
  bool graph = true;  ///< false for the vertical plane, whose residual is 0 by convention
};
PointResidual residual_at(const AnalyticTranslator& t, double x, double y);

struct ResidualReport {
  double maxAbs = 0.0;
  double l2 = 0.0;          ///< sqrt(sum r^2 hx hy) over interior nodes
  double maxGradient = 0.0; ///< max |Du| at interior nodes
  ScalarField perNode;      ///< NaN on the boundary ring
};

/// pde_residual of the central-difference jet at every interior node.
ResidualReport residual_report(const GridFunction& u);

}  // namespace translab
