// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "translab/grid.hpp"

namespace translab {

/// One sample of a rotationally symmetric profile curve (r, u(r)) in the
/// half-plane, with slope angle psi and the two principal curvatures of the
/// surface of revolution (upward normal for graph parts, downward convention).
struct RadialSample {
  double r = 0.0;
  double u = 0.0;
  double psi = 0.0;
  double kappaProfile = 0.0;   ///< d psi / ds, curvature of the meridian
  double kappaRotation = 0.0;  ///< sin(psi) / r, multiplicity n - 1
};

struct RadialProfile {
  enum class Kind { Bowl, CatenoidUpper, CatenoidLower, Synthetic };

  int n = 2;
  Kind kind = Kind::Bowl;
  double lambda = 0.0;
  double h = 0.0;
  std::vector<RadialSample> samples;

  double r_max() const { return samples.empty() ? 0.0 : samples.back().r; }
  double mean_curvature(const RadialSample& s) const {
    return s.kappaProfile + (n - 1) * s.kappaRotation;
  }
  /// Throws NonMonotoneR if radii are not strictly increasing.
  void validate() const;
};

RadialProfile shoot_bowl(int n, double r_max, double h);

struct CatenoidPair {
  RadialProfile upper;
  RadialProfile lower;
};

/// Both wings of the translating catenoid with neck radius lambda; each wing
/// starts at (lambda, 0) with a vertical tangent.
CatenoidPair shoot_catenoid(int n, double lambda, double r_max, double h);

/// Profile of a prescribed graph u(r); f returns (u, u', u'') at r.
RadialProfile profile_from_graph(int n, const std::vector<double>& radii,
                                 const std::function<std::array<double, 3>(double)>& f);

/// Cubic Hermite interpolation of u and of the slope tan(psi) at r.
double value_at(const RadialProfile& p, double r);
double slope_at(const RadialProfile& p, double r);

/// Sample the surface of revolution u(sqrt(x^2 + y^2)) on a centered grid.
GridFunction revolve_to_grid(const RadialProfile& p, int nx, int ny, double ax, double ay);

/// u(r) ~ -(quadCoeff r^2 - logCoeff log r - constant) over [rLo, rHi].
struct AsymptoticFit {
  double quadCoeff = 0.0;
  double logCoeff = 0.0;
  double constant = 0.0;
  double remainderBound = 0.0;  ///< max |u - fit| over the window
  /// Log-log slope of the remainder beyond -r^2/(2(n-1)) + log r, measured
  /// from g(r) - g(2r) so the unknown constant cancels.
  double remainderSlope = 0.0;
  double rLo = 0.0;
  double rHi = 0.0;
  int samplesUsed = 0;
};

AsymptoticFit fit_asymptotics(const RadialProfile& p, double r_lo, double r_hi);

struct RadialIdentityReport {
  std::vector<double> r;
  std::vector<double> defectDriftH;   ///< Delta^f H + |A|^2 H
  std::vector<double> defectDriftK1;  ///< Delta^f k1 + |A|^2 k1 - 2 Q^2 / (k1 - k2)
  std::vector<double> q2;             ///< (d kappa_rot / ds)^2
  std::vector<double> q2Codazzi;      ///< ((kappa_p - kappa_rot) cos psi / r)^2
  double maxDefectH = 0.0;
  double maxDefectK1 = 0.0;
  double maxKeyDefect = 0.0;          ///< max |sqrt(q2) - sqrt(q2Codazzi)|
  bool violation = false;             ///< maxDefectH above violationTolerance
};

inline constexpr double kDefaultUmbilicRadius = 0.1;

/// Identity check for n = 2 surfaces of revolution over samples with
/// r in [r_lo, r_hi]. Throws UmbilicWindow if the window reaches r < r_umb or
/// contains near-umbilic samples.
RadialIdentityReport radial_identities_report(const RadialProfile& p, double r_lo, double r_hi,
                                              double r_umb = kDefaultUmbilicRadius,
                                              double violation_tolerance = 1e-4);

}  // namespace translab
