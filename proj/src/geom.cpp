// SPDX-License-Identifier: Apache-2.0
#include "translab/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "translab/errors.hpp"
#include "translab/numerics.hpp"

namespace translab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool finite_jet(const Jet& j) {
  return std::isfinite(j.u) && std::isfinite(j.ux) && std::isfinite(j.uy) && std::isfinite(j.uxx) &&
         std::isfinite(j.uxy) && std::isfinite(j.uyy);
}

struct InverseMetric {
  double g11, g12, g22, W2;
};

InverseMetric inverse_metric(double p, double q) {
  const double W2 = 1.0 + p * p + q * q;
  return {1.0 - p * p / W2, -p * q / W2, 1.0 - q * q / W2, W2};
}

}  // namespace

double umbilic_tolerance(double kappa1, double kappa2) {
  return 1e-6 * std::max({std::abs(kappa1), std::abs(kappa2), 1.0});
}

PointGeometry point_geometry(const Jet& jet, Orientation orientation) {
  const double p = jet.ux, q = jet.uy;
  const double W2 = 1.0 + p * p + q * q;
  require(W2 > 0.0, ErrorCode::DegenerateMetric, "1 + |Du|^2 is not positive");
  const double W = std::sqrt(W2);
  const double sigma = orientation == Orientation::Upward ? 1.0 : -1.0;

  PointGeometry g;
  g.W = W;
  g.normal = sigma * Vec3(-p, -q, 1.0) / W;

  // Second fundamental form in the coordinate basis.
  const double b11 = sigma * jet.uxx / W, b12 = sigma * jet.uxy / W, b22 = sigma * jet.uyy / W;

  // G = L L^T; M = L^{-1} B L^{-T} is symmetric with the principal curvatures as eigenvalues.
  const double l11 = std::sqrt(1.0 + p * p);
  const double l21 = p * q / l11;
  const double l22 = W / l11;
  const double c11 = b11 / l11;
  const double c21 = (b12 - l21 * c11) / l22;
  const double c12 = b12 / l11;
  const double c22 = (b22 - l21 * c12) / l22;
  const double m11 = c11 / l11;
  const double m12 = 0.5 * ((c12 - l21 * m11) / l22 + c21 / l11);
  const double m22 = (c22 - l21 * c21 / l11) / l22;

  const double mean = 0.5 * (m11 + m22);
  const double half = 0.5 * (m11 - m22);
  const double rad = std::hypot(half, m12);
  g.kappa1 = mean + rad;
  g.kappa2 = mean - rad;
  g.H = m11 + m22;
  g.umbilic = std::abs(g.kappa1 - g.kappa2) <= umbilic_tolerance(g.kappa1, g.kappa2);

  const double phi = rad > 0.0 ? 0.5 * std::atan2(m12, half) : 0.0;
  const double e1x = std::cos(phi), e1y = std::sin(phi);
  auto to_coords = [&](double ex, double ey) {
    const double ay = ey / l22;
    const double ax = (ex - l21 * ay) / l11;
    return Vec2(ax, ay);
  };
  g.a1 = to_coords(e1x, e1y);
  g.a2 = to_coords(-e1y, e1x);
  g.v1 = Vec3(g.a1.x(), g.a1.y(), p * g.a1.x() + q * g.a1.y());
  g.v2 = Vec3(g.a2.x(), g.a2.y(), p * g.a2.x() + q * g.a2.y());
  return g;
}

ScalarField GeometryField::vertical_normal() const {
  ScalarField out = ScalarField::undefined(nx, ny);
  for (std::size_t k = 0; k < flags.size(); ++k)
    if (flags[k] & kInterior) out.values[k] = normal[k].z();
  return out;
}

GeometryField graph_geometry(const GridFunction& u, Orientation orientation) {
  u.validate();
  GeometryField g;
  g.nx = u.nx;
  g.ny = u.ny;
  g.orientation = orientation;
  const std::size_t n = u.size();
  const Vec3 nan3 = Vec3::Constant(kNaN);
  const Vec2 nan2 = Vec2::Constant(kNaN);
  g.W.assign(n, kNaN);
  g.H.assign(n, kNaN);
  g.kappa1.assign(n, kNaN);
  g.kappa2.assign(n, kNaN);
  g.normA2.assign(n, kNaN);
  g.normal.assign(n, nan3);
  g.v1.assign(n, nan3);
  g.v2.assign(n, nan3);
  g.meanCurvVec.assign(n, nan3);
  g.a1.assign(n, nan2);
  g.a2.assign(n, nan2);
  g.flags.assign(n, 0);

  for (int i = 1; i < u.nx - 1; ++i) {
    for (int j = 1; j < u.ny - 1; ++j) {
      const Jet jet = central_jet(u, i, j);
      require(finite_jet(jet), ErrorCode::NonFinite, "finite differences overflowed");
      const PointGeometry pg = point_geometry(jet, orientation);
      const std::size_t k = u.index(i, j);
      g.W[k] = pg.W;
      g.H[k] = pg.H;
      g.kappa1[k] = pg.kappa1;
      g.kappa2[k] = pg.kappa2;
      g.normA2[k] = pg.normA2();
      g.normal[k] = pg.normal;
      g.v1[k] = pg.v1;
      g.v2[k] = pg.v2;
      g.a1[k] = pg.a1;
      g.a2[k] = pg.a2;
      g.meanCurvVec[k] = pg.mean_curvature_vector();
      g.flags[k] = kInterior | (pg.umbilic ? kUmbilic : 0);
    }
  }
  return g;
}

ScalarField translator_defect(const GeometryField& geom) {
  ScalarField out = ScalarField::undefined(geom.nx, geom.ny);
  for (std::size_t k = 0; k < geom.flags.size(); ++k) {
    if (!(geom.flags[k] & kInterior)) continue;
    const Vec3& N = geom.normal[k];
    const Vec3 e3perp = N.z() * N;
    out.values[k] = (geom.meanCurvVec[k] + e3perp).norm();
  }
  return out;
}

namespace {

void require_margin(const GridFunction& u, const ScalarField& phi) {
  require(u.nx >= 5 && u.ny >= 5, ErrorCode::MarginTooSmall,
          "drift operators need a two-node margin (grid at least 5x5)");
  require(phi.aligned_with(u), ErrorCode::ShapeMismatch, "field is not aligned with the grid");
}

bool stencil_defined(const ScalarField& f, int i, int j) {
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      if (!std::isfinite(f(i + a, j + b))) return false;
  return true;
}

}  // namespace

ScalarField drift_laplacian(const ScalarField& phi, const GridFunction& u, const GeometryField& geom) {
  require_margin(u, phi);
  require(geom.nx == u.nx && geom.ny == u.ny, ErrorCode::ShapeMismatch, "geometry/grid mismatch");
  ScalarField out = ScalarField::undefined(u.nx, u.ny);
  for (int i = 2; i < u.nx - 2; ++i) {
    for (int j = 2; j < u.ny - 2; ++j) {
      if (!stencil_defined(phi, i, j)) continue;
      const Jet du = central_jet(u, i, j);
      const Jet dphi = central_jet(phi, u, i, j);
      const InverseMetric g = inverse_metric(du.ux, du.uy);
      const double trace_u = g.g11 * du.uxx + 2.0 * g.g12 * du.uxy + g.g22 * du.uyy;
      const double trace_phi = g.g11 * dphi.uxx + 2.0 * g.g12 * dphi.uxy + g.g22 * dphi.uyy;
      const double du_dphi = du.ux * dphi.ux + du.uy * dphi.uy;
      // Laplace-Beltrami: g^ij phi_ij - (g^ij u_ij)(Du.Dphi)/W^2; drift: <e3, grad phi> = Du.Dphi/W^2.
      out(i, j) = trace_phi - (trace_u + 1.0) * du_dphi / g.W2;
    }
  }
  return out;
}

ScalarField gradient_inner(const ScalarField& f, const ScalarField& h, const GridFunction& u) {
  require_margin(u, f);
  require(h.aligned_with(u), ErrorCode::ShapeMismatch, "field is not aligned with the grid");
  ScalarField out = ScalarField::undefined(u.nx, u.ny);
  for (int i = 2; i < u.nx - 2; ++i) {
    for (int j = 2; j < u.ny - 2; ++j) {
      if (!stencil_defined(f, i, j) || !stencil_defined(h, i, j)) continue;
      const Jet du = central_jet(u, i, j);
      const Jet df = central_jet(f, u, i, j);
      const Jet dh = central_jet(h, u, i, j);
      const InverseMetric g = inverse_metric(du.ux, du.uy);
      out(i, j) = g.g11 * df.ux * dh.ux + g.g12 * (df.ux * dh.uy + df.uy * dh.ux) + g.g22 * df.uy * dh.uy;
    }
  }
  return out;
}

QSquared q_squared(const GeometryField& geom, const GridFunction& u) {
  ScalarField k1 = geom.field(geom.kappa1);
  ScalarField k2 = geom.field(geom.kappa2);
  require_margin(u, k1);
  QSquared out{ScalarField::undefined(u.nx, u.ny), std::vector<std::uint8_t>(u.size(), 0)};
  for (int i = 2; i < u.nx - 2; ++i) {
    for (int j = 2; j < u.ny - 2; ++j) {
      bool umb = false;
      for (int a = -1; a <= 1 && !umb; ++a)
        for (int b = -1; b <= 1; ++b)
          if (geom.umbilic(i + a, j + b)) {
            umb = true;
            break;
          }
      const std::size_t k = u.index(i, j);
      if (umb) {
        out.umbilic[k] = 1;
        continue;
      }
      const Jet d1 = central_jet(k1, u, i, j);
      const Jet d2 = central_jet(k2, u, i, j);
      const Vec2& a1 = geom.a1[k];
      const Vec2& a2 = geom.a2[k];
      const double dk1_v2 = d1.ux * a2.x() + d1.uy * a2.y();
      const double dk2_v1 = d2.ux * a1.x() + d2.uy * a1.y();
      out.value.values[k] = dk1_v2 * dk1_v2 + dk2_v1 * dk2_v1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curves

void CurveState::validate() const {
  require(points.size() >= 8, ErrorCode::InvalidArgument, "curve needs at least 8 points");
  require(closed, ErrorCode::InvalidArgument, "only closed curves are supported");
  const std::size_t n = points.size();
  CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = points[i];
    require(std::isfinite(p.x()) && std::isfinite(p.y()), ErrorCode::NonFinite, "curve point is not finite");
    total.add((points[(i + 1) % n] - p).norm());
  }
  const double mean = total.value() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double l = (points[(i + 1) % n] - points[i]).norm();
    if (!(l > 1e-14 * mean)) fail(ErrorCode::DegenerateEdge, "consecutive points coincide at index " + std::to_string(i));
  }
}

CurveState CurveState::circle(double radius, int n, Vec2 center) {
  CurveState c;
  c.points.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * kPi * k / n;
    c.points.emplace_back(center.x() + radius * std::cos(s), center.y() + radius * std::sin(s));
  }
  return c;
}

CurveState CurveState::ellipse(double a, double b, int n, Vec2 center) {
  CurveState c;
  c.points.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * kPi * k / n;
    c.points.emplace_back(center.x() + a * std::cos(s), center.y() + b * std::sin(s));
  }
  return c;
}

double curve_length(const CurveState& c) {
  CompensatedSum s;
  const std::size_t n = c.points.size();
  for (std::size_t i = 0; i < n; ++i) s.add((c.points[(i + 1) % n] - c.points[i]).norm());
  return s.value();
}

double enclosed_area(const CurveState& c) {
  const std::size_t n = c.points.size();
  Vec2 centroid = Vec2::Zero();
  for (const Vec2& p : c.points) centroid += p;
  centroid /= static_cast<double>(n);
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = c.points[i] - centroid;
    const Vec2 q = c.points[(i + 1) % n] - centroid;
    s.add(p.x() * q.y() - q.x() * p.y());
  }
  return 0.5 * s.value();
}

double diameter(const CurveState& c) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < c.points.size(); ++i)
    for (std::size_t k = i + 1; k < c.points.size(); ++k)
      d2 = std::max(d2, (c.points[i] - c.points[k]).squaredNorm());
  return std::sqrt(d2);
}

CurveGeometry curve_geometry(const CurveState& c) {
  c.validate();
  const std::size_t n = c.points.size();
  CurveGeometry g;
  g.kappa.resize(n);
  g.normal.resize(n);
  g.curvatureVector.resize(n);
  std::vector<double> edge(n);
  CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) {
    edge[i] = (c.points[(i + 1) % n] - c.points[i]).norm();
    total.add(edge[i]);
  }
  g.length = total.value();
  g.meanEdge = g.length / static_cast<double>(n);
  g.minEdge = *std::min_element(edge.begin(), edge.end());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n, ip = (i + 1) % n;
    const double lm = edge[im], lp = edge[i];
    const Vec2 fwd = (c.points[ip] - c.points[i]) / lp;
    const Vec2 bwd = (c.points[i] - c.points[im]) / lm;
    const Vec2 K = 2.0 / (lm + lp) * (fwd - bwd);
    const Vec2 t = (c.points[ip] - c.points[im]).normalized();
    const Vec2 nrm(-t.y(), t.x());
    g.curvatureVector[i] = K;
    g.normal[i] = nrm;
    g.kappa[i] = K.dot(nrm);
    g.Amax = std::max(g.Amax, std::abs(g.kappa[i]));
  }
  g.enclosedArea = enclosed_area(c);
  return g;
}

}  // namespace translab
