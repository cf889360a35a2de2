// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "translab/geom.hpp"
#include "translab/grid.hpp"

namespace translab {

/// Midpoint rule for the weighted area  sum e^{-u} W hx hy  over the cells
/// whose midpoints lie in `region`. Cell values use the four-corner average
/// of u and the averaged edge differences of u.
double weighted_area(const GridFunction& u, const Region& region);

/// Tensor cosine bump phi = cos^2(pi dx / 2r) cos^2(pi dy / 2r) on the square
/// of half-side r around the center, perturbed with amplitude epsilon.
struct VariationSpec {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 1.0;
  double epsilon = 1e-4;

  double bump(double x, double y) const;
  void validate(const GridFunction& u) const;
};

struct FirstVariation {
  double derivative = 0.0;  ///< (A[u + eps phi W] - A[u - eps phi W]) / (2 eps)
  double areaPlus = 0.0;
  double areaMinus = 0.0;
  double epsilon = 0.0;
  double bumpIntegral = 0.0;  ///< sum phi hx hy
};

FirstVariation first_variation_check(const GridFunction& u, const VariationSpec& v);

/// L_f phi = Delta^f phi + |A|^2 phi.
ScalarField stability_apply(const GridFunction& u, const GeometryField& geom, const ScalarField& phi);

/// L_f <e3, N>.
ScalarField jacobi_residual(const GridFunction& u, const GeometryField& geom);

struct GradHCheck {
  ScalarField defect;  ///< |grad_M H - A(e3^T, .)| at nodes with a two-node margin
  double maxDefect = 0.0;
};

GradHCheck gradH_identity_check(const GridFunction& u, const GeometryField& geom,
                                const Region& window = Region::everything());

struct SpruckXiaoReport {
  bool flipped = false;  ///< orientation reversed so that H > 0
  ScalarField ratio;     ///< H / kappa1
  ScalarField q2;
  ScalarField defectDriftH;
  ScalarField defectDriftK1;
  ScalarField lhsInequality;
  std::vector<std::uint8_t> mask;  ///< 1 on evaluated nodes
  std::size_t maskCount = 0;
  double tau = 0.0;  ///< 10 h max|A|^3 over the mask
  double ratioMin = 0.0;
  double ratioMax = 0.0;
  double maxDefectH = 0.0;
  double maxDefectK1 = 0.0;
  double maxLhs = 0.0;
  double fractionAboveTau = 0.0;
  double fractionWithinTau = 0.0;
};

/// Identity and inequality fields on non-umbilic nodes inside `window`.
/// Throws Precondition when H changes sign on the evaluation set and
/// EmptyMask when no node qualifies.
SpruckXiaoReport spruck_xiao_report(const GridFunction& u, const GeometryField& geom,
                                    const Region& window = Region::everything());

/// max |f| over finite entries at nodes inside `window`.
double max_abs_in(const ScalarField& f, const GridFunction& u, const Region& window = Region::everything());

}  // namespace translab
