// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "translab/analysis.hpp"
#include "translab/catalog.hpp"
#include "translab/csf.hpp"
#include "translab/elliptic.hpp"
#include "translab/geom.hpp"
#include "translab/radial.hpp"

namespace translab {

inline constexpr const char* kVersion = "0.1.0";

// Grid CSV: "# translab grid v1 nx=.. ny=.. hx=.. hy=.. x0=.. y0=.." then
// "i,j,x,y,u" rows, y fastest. Doubles use %.17g so a round trip is exact.
void write_grid_csv(std::ostream& os, const GridFunction& u);
void write_grid_csv(const std::string& path, const GridFunction& u);
GridFunction read_grid_csv(std::istream& is);
GridFunction read_grid_csv(const std::string& path);

/// One row per interior node: i,j,x,y,u,W,H,kappa1,kappa2,normA2,Q2,flags.
void write_geometry_csv(std::ostream& os, const GridFunction& u, const GeometryField& geom, const QSquared& q2);
nlohmann::json geometry_json(const GridFunction& u, const GeometryField& geom, const QSquared& q2);

// Profile CSV: "# translab profile v1 n=.. kind=.. lambda=.. h=.." then
// r,u,psi,kappa1,kappa2,H (kappa1 = meridian, kappa2 = rotational).
void write_profile_csv(std::ostream& os, const RadialProfile& p);
void write_profile_csv(const std::string& path, const RadialProfile& p);
RadialProfile read_profile_csv(std::istream& is);
RadialProfile read_profile_csv(const std::string& path);

/// t,Amax,length,area; header only for an empty log.
void write_log_csv(std::ostream& os, const SingularityLog& log);
void write_comparison_csv(std::ostream& os, const ComparisonResult& r);

std::string to_string(RadialProfile::Kind k);

nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const AsymptoticFit& f);
nlohmann::json to_json(const RadialIdentityReport& r);
nlohmann::json to_json(const SolveReport& r);
nlohmann::json to_json(const ContinuationResult& c);
nlohmann::json to_json(const SingularityLog& log);
nlohmann::json to_json(const ComparisonResult& r);
nlohmann::json to_json(const SpruckXiaoReport& r);
nlohmann::json to_json(const FirstVariation& v);
nlohmann::json to_json(const GradHCheck& g);

/// Quad mesh with a provenance header.
struct MeshExport {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::size_t, 4>> faces;  ///< 0-based
  std::vector<std::string> header;

  void validate() const;  ///< IoError on NaN vertices or bad indices
};

/// Vertices (x_i, y_j, u_ij); (nx-1)(ny-1) quads.
MeshExport mesh_from_grid(const GridFunction& u);
/// Vertices (r cos a, r sin a, u(r)) for `angular` samples per ring.
MeshExport mesh_from_profile(const RadialProfile& p, int angular = 128);

/// OBJ text: header comments, v lines (17 significant digits), 1-based f quads.
void write_obj(std::ostream& os, const MeshExport& m);
void write_obj(const std::string& path, const MeshExport& m);

void write_json(const std::string& path, const nlohmann::json& j);
void write_text(const std::string& path, const std::string& text);

}  // namespace translab
