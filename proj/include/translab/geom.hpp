// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "translab/grid.hpp"

namespace translab {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

enum class Orientation {
  Upward,    ///< N has positive vertical component (module default)
  Downward,  ///< flipped; only used to check orientation independence
};

enum NodeFlag : std::uint8_t {
  kInterior = 1u << 0,
  kUmbilic = 1u << 1,
};

/// Differential geometry of a graph z = u(x, y) at one point, from its jet.
/// kappa1 >= kappa2 are eigenvalues of the shape operator G^{-1} B with
/// B_ij = <X_ij, N>; H = kappa1 + kappa2 and the mean curvature vector is H N.
struct PointGeometry {
  double W = 1.0;
  Vec3 normal = Vec3::UnitZ();
  double H = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  Vec3 v1 = Vec3::UnitX();
  Vec3 v2 = Vec3::UnitY();
  // Parameter-plane components of v1, v2 (v = a_x X_x + a_y X_y).
  Vec2 a1 = Vec2::UnitX();
  Vec2 a2 = Vec2::UnitY();
  bool umbilic = false;

  double normA2() const { return kappa1 * kappa1 + kappa2 * kappa2; }
  Vec3 mean_curvature_vector() const { return H * normal; }
};

/// |kappa1 - kappa2| at or below this counts as umbilic.
double umbilic_tolerance(double kappa1, double kappa2);

PointGeometry point_geometry(const Jet& jet, Orientation orientation = Orientation::Upward);

/// Per-node geometry over a grid. Arrays have nx*ny entries (grid ordering);
/// only nodes flagged kInterior (one-node margin) hold values, others NaN.
struct GeometryField {
  int nx = 0;
  int ny = 0;
  Orientation orientation = Orientation::Upward;
  std::vector<double> W, H, kappa1, kappa2, normA2;
  std::vector<Vec3> normal, v1, v2, meanCurvVec;
  std::vector<Vec2> a1, a2;
  std::vector<std::uint8_t> flags;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ny + j; }
  bool interior(int i, int j) const { return flags[index(i, j)] & kInterior; }
  bool umbilic(int i, int j) const { return flags[index(i, j)] & kUmbilic; }

  ScalarField field(const std::vector<double>& values) const { return {nx, ny, values}; }
  /// <e3, N> at every interior node.
  ScalarField vertical_normal() const;
};

GeometryField graph_geometry(const GridFunction& u, Orientation orientation = Orientation::Upward);

/// |H N + <e3, N> N| at interior nodes: the orientation-free translator defect.
ScalarField translator_defect(const GeometryField& geom);

/// Drift Laplacian Delta_M phi - <e3, grad_M phi> at nodes with a two-node
/// margin. Nodes whose stencil touches an undefined phi value stay NaN.
ScalarField drift_laplacian(const ScalarField& phi, const GridFunction& u, const GeometryField& geom);

/// Surface gradient inner product <grad_M f, grad_M g> = g^{ij} f_i g_j at
/// nodes with a two-node margin.
ScalarField gradient_inner(const ScalarField& f, const ScalarField& g, const GridFunction& u);

struct QSquared {
  ScalarField value;                   ///< NaN where undefined
  std::vector<std::uint8_t> umbilic;   ///< 1 where the stencil touches an umbilic node
};

/// Q^2 = (d kappa1 (v2))^2 + (d kappa2 (v1))^2 at nodes with a two-node margin.
QSquared q_squared(const GeometryField& geom, const GridFunction& u);

/// Closed planar polyline evolving in time.
struct CurveState {
  std::vector<Vec2> points;
  bool closed = true;
  double t = 0.0;
  std::size_t steps = 0;

  /// Throws InvalidArgument (too few points) or DegenerateEdge.
  void validate() const;

  static CurveState circle(double radius, int n, Vec2 center = Vec2::Zero());
  /// x = a cos s, y = b sin s, uniformly spaced in s, counterclockwise.
  static CurveState ellipse(double a, double b, int n, Vec2 center = Vec2::Zero());
};

struct CurveGeometry {
  std::vector<double> kappa;        ///< signed; positive on counterclockwise convex curves
  std::vector<Vec2> normal;         ///< tangent rotated by +90 degrees
  std::vector<Vec2> curvatureVector;
  double length = 0.0;
  double enclosedArea = 0.0;        ///< signed shoelace area
  double Amax = 0.0;
  double minEdge = 0.0;
  double meanEdge = 0.0;
};

/// Arclength-normalized second differences: K_i = 2/(l- + l+) ((x+ - x)/l+ - (x - x-)/l-).
CurveGeometry curve_geometry(const CurveState& c);

double curve_length(const CurveState& c);
double enclosed_area(const CurveState& c);
double diameter(const CurveState& c);

}  // namespace translab
