// SPDX-License-Identifier: Apache-2.0
#include "translab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "translab/errors.hpp"
#include "translab/numerics.hpp"

namespace translab {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  return f;
}

void check_stream(const std::ostream& os, const std::string& what) {
  if (!os) fail(ErrorCode::IoError, "write failed: " + what);
}

/// Parses "# translab <kind> v1 key=value ..." into a map.
std::map<std::string, std::string> parse_header(const std::string& line, const std::string& kind) {
  std::istringstream ss(line);
  std::string hash, tag, k, ver;
  ss >> hash >> tag >> k >> ver;
  if (hash != "#" || tag != "translab" || k != kind || ver != "v1")
    fail(ErrorCode::IoError, "missing '# translab " + kind + " v1' header");
  std::map<std::string, std::string> out;
  std::string tok;
  while (ss >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) fail(ErrorCode::IoError, "malformed header token '" + tok + "'");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) fail(ErrorCode::IoError, "bad number '" + s + "' for " + what);
  return v;
}

const std::string& header_value(const std::map<std::string, std::string>& h, const std::string& key) {
  const auto it = h.find(key);
  if (it == h.end()) fail(ErrorCode::IoError, "header lacks '" + key + "'");
  return it->second;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_grid_csv(std::ostream& os, const GridFunction& u) {
  u.validate();
  os << "# translab grid v1 nx=" << u.nx << " ny=" << u.ny << " hx=" << g17(u.hx) << " hy=" << g17(u.hy)
     << " x0=" << g17(u.x0) << " y0=" << g17(u.y0) << "\n";
  os << "i,j,x,y,u\n";
  for (int i = 0; i < u.nx; ++i)
    for (int j = 0; j < u.ny; ++j)
      os << i << ',' << j << ',' << g17(u.x(i)) << ',' << g17(u.y(j)) << ',' << g17(u(i, j)) << '\n';
  check_stream(os, "grid csv");
}

void write_grid_csv(const std::string& path, const GridFunction& u) {
  std::ofstream f = open_out(path);
  write_grid_csv(f, u);
}

GridFunction read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::IoError, "empty grid file");
  const auto h = parse_header(line, "grid");
  GridFunction u;
  u.nx = static_cast<int>(to_double(header_value(h, "nx"), "nx"));
  u.ny = static_cast<int>(to_double(header_value(h, "ny"), "ny"));
  u.hx = to_double(header_value(h, "hx"), "hx");
  u.hy = to_double(header_value(h, "hy"), "hy");
  u.x0 = to_double(header_value(h, "x0"), "x0");
  u.y0 = to_double(header_value(h, "y0"), "y0");
  if (u.nx < 3 || u.ny < 3) fail(ErrorCode::IoError, "grid header has nx or ny below 3");
  if (!std::getline(is, line) || line != "i,j,x,y,u") fail(ErrorCode::IoError, "missing i,j,x,y,u column line");
  u.values.assign(static_cast<std::size_t>(u.nx) * u.ny, std::numeric_limits<double>::quiet_NaN());
  std::vector<std::uint8_t> seen(u.values.size(), 0);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 5) fail(ErrorCode::IoError, "grid row " + std::to_string(rows) + " needs 5 columns");
    const int i = static_cast<int>(to_double(cells[0], "i")), j = static_cast<int>(to_double(cells[1], "j"));
    if (i < 0 || j < 0 || i >= u.nx || j >= u.ny) fail(ErrorCode::IoError, "grid row index out of range");
    u(i, j) = to_double(cells[4], "u");
    seen[u.index(i, j)] = 1;
    ++rows;
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) fail(ErrorCode::IoError, "grid file misses node " + std::to_string(k));
  u.validate();
  return u;
}

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  return read_grid_csv(f);
}

void write_geometry_csv(std::ostream& os, const GridFunction& u, const GeometryField& geom, const QSquared& q2) {
  os << "i,j,x,y,u,W,H,kappa1,kappa2,normA2,Q2,flags\n";
  for (int i = 0; i < u.nx; ++i)
    for (int j = 0; j < u.ny; ++j) {
      const std::size_t k = u.index(i, j);
      if (!geom.interior(i, j)) continue;
      os << i << ',' << j << ',' << g17(u.x(i)) << ',' << g17(u.y(j)) << ',' << g17(u(i, j)) << ','
         << g17(geom.W[k]) << ',' << g17(geom.H[k]) << ',' << g17(geom.kappa1[k]) << ',' << g17(geom.kappa2[k])
         << ',' << g17(geom.normA2[k]) << ',' << g17(q2.value.values[k]) << ',' << int(geom.flags[k]) << '\n';
    }
  check_stream(os, "geometry csv");
}

json geometry_json(const GridFunction& u, const GeometryField& geom, const QSquared& q2) {
  json nodes = json::array();
  for (int i = 0; i < u.nx; ++i)
    for (int j = 0; j < u.ny; ++j) {
      if (!geom.interior(i, j)) continue;
      const std::size_t k = u.index(i, j);
      nodes.push_back({{"i", i},
                       {"j", j},
                       {"x", u.x(i)},
                       {"y", u.y(j)},
                       {"u", u(i, j)},
                       {"W", geom.W[k]},
                       {"H", geom.H[k]},
                       {"kappa1", geom.kappa1[k]},
                       {"kappa2", geom.kappa2[k]},
                       {"normA2", geom.normA2[k]},
                       {"Q2", finite_or_null(q2.value.values[k])},
                       {"flags", geom.flags[k]}});
    }
  return {{"schema", "translab.geometry.v1"}, {"nx", u.nx}, {"ny", u.ny}, {"nodes", nodes}};
}

std::string to_string(RadialProfile::Kind k) {
  switch (k) {
    case RadialProfile::Kind::Bowl: return "bowl";
    case RadialProfile::Kind::CatenoidUpper: return "catenoid-upper";
    case RadialProfile::Kind::CatenoidLower: return "catenoid-lower";
    case RadialProfile::Kind::Synthetic: return "synthetic";
  }
  return "synthetic";
}

void write_profile_csv(std::ostream& os, const RadialProfile& p) {
  p.validate();
  os << "# translab profile v1 n=" << p.n << " kind=" << to_string(p.kind) << " lambda=" << g17(p.lambda)
     << " h=" << g17(p.h) << "\n";
  os << "r,u,psi,kappa1,kappa2,H\n";
  for (const RadialSample& s : p.samples)
    os << g17(s.r) << ',' << g17(s.u) << ',' << g17(s.psi) << ',' << g17(s.kappaProfile) << ','
       << g17(s.kappaRotation) << ',' << g17(p.mean_curvature(s)) << '\n';
  check_stream(os, "profile csv");
}

void write_profile_csv(const std::string& path, const RadialProfile& p) {
  std::ofstream f = open_out(path);
  write_profile_csv(f, p);
}

RadialProfile read_profile_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) fail(ErrorCode::IoError, "empty profile file");
  const auto h = parse_header(line, "profile");
  RadialProfile p;
  p.n = static_cast<int>(to_double(header_value(h, "n"), "n"));
  const std::string& kind = header_value(h, "kind");
  if (kind == "bowl") p.kind = RadialProfile::Kind::Bowl;
  else if (kind == "catenoid-upper") p.kind = RadialProfile::Kind::CatenoidUpper;
  else if (kind == "catenoid-lower") p.kind = RadialProfile::Kind::CatenoidLower;
  else if (kind == "synthetic") p.kind = RadialProfile::Kind::Synthetic;
  else fail(ErrorCode::IoError, "unknown profile kind '" + kind + "'");
  p.lambda = to_double(header_value(h, "lambda"), "lambda");
  p.h = to_double(header_value(h, "h"), "h");
  if (!std::getline(is, line) || line != "r,u,psi,kappa1,kappa2,H")
    fail(ErrorCode::IoError, "missing r,u,psi,kappa1,kappa2,H column line");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 6) fail(ErrorCode::IoError, "profile row needs 6 columns");
    p.samples.push_back({to_double(c[0], "r"), to_double(c[1], "u"), to_double(c[2], "psi"),
                         to_double(c[3], "kappa1"), to_double(c[4], "kappa2")});
  }
  p.validate();
  return p;
}

RadialProfile read_profile_csv(const std::string& path) {
  std::ifstream f = open_in(path);
  return read_profile_csv(f);
}

void write_log_csv(std::ostream& os, const SingularityLog& log) {
  os << "t,Amax,length,area\n";
  for (std::size_t k = 0; k < log.size(); ++k)
    os << g17(log.times[k]) << ',' << g17(log.Amax[k]) << ',' << g17(log.length[k]) << ',' << g17(log.area[k])
       << '\n';
  check_stream(os, "log csv");
}

void write_comparison_csv(std::ostream& os, const ComparisonResult& r) {
  os << "t,distance\n";
  for (std::size_t k = 0; k < r.times.size(); ++k) os << g17(r.times[k]) << ',' << g17(r.distance[k]) << '\n';
  check_stream(os, "comparison csv");
}

json to_json(const ResidualReport& r) {
  return {{"schema", "translab.residual.v1"},
          {"maxAbs", r.maxAbs},
          {"l2", r.l2},
          {"maxGradient", r.maxGradient}};
}

json to_json(const AsymptoticFit& f) {
  return {{"schema", "translab.asymptotic-fit.v1"},
          {"quadCoeff", f.quadCoeff},
          {"logCoeff", f.logCoeff},
          {"constant", f.constant},
          {"remainderBound", f.remainderBound},
          {"remainderSlope", finite_or_null(f.remainderSlope)},
          {"fitWindow", {f.rLo, f.rHi}},
          {"samplesUsed", f.samplesUsed}};
}

json to_json(const RadialIdentityReport& r) {
  return {{"schema", "translab.radial-identities.v1"},
          {"samples", r.r.size()},
          {"maxDefectDriftH", r.maxDefectH},
          {"maxDefectDriftK1", r.maxDefectK1},
          {"maxKeyDefect", r.maxKeyDefect},
          {"violation", r.violation}};
}

json to_json(const SolveReport& r) {
  const Eigen::Matrix2d& m = r.centerHessian;
  return {{"schema", "translab.solve.v1"},
          {"iterations", r.iterations},
          {"finalResidualMax", r.finalResidualMax},
          {"finalRawResidualMax", r.finalRawResidualMax},
          {"dampingHistory", r.dampingHistory},
          {"residualHistory", r.residualHistory},
          {"centerHessian", {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}},
          {"centerEigenvalues", {r.centerEigenvalues[0], r.centerEigenvalues[1]}},
          {"k", r.k},
          {"concaveFlag", r.concaveFlag},
          {"maxHessianEigenvalue", r.maxHessianEigenvalue},
          {"concavityTol", r.concavityTol},
          {"symmetryDefect", r.symmetryDefect},
          {"boundaryGradientMax", r.boundaryGradientMax},
          {"asymptoteDefect", finite_or_null(r.asymptoteDefect)},
          {"b", r.b},
          {"theta", r.theta},
          {"usedFallback", r.usedFallback}};
}

json to_json(const ContinuationResult& c) {
  json reports = json::array();
  for (const SolveReport& r : c.reports) reports.push_back(to_json(r));
  return {{"schema", "translab.continuation.v1"}, {"b", c.b}, {"k", c.k}, {"direction", c.direction},
          {"reports", reports}};
}

json to_json(const SingularityLog& log) {
  return {{"schema", "translab.singularity.v1"},
          {"samples", log.size()},
          {"fittedT", finite_or_null(log.fittedT)},
          {"windowStart", log.windowStart},
          {"typeVerdict", to_string(log.verdict.kind)},
          {"Climsup", log.verdict.Climsup},
          {"limsupRatio", log.verdict.ratio},
          {"lengthMonotone", log.lengthMonotone},
          {"areaRateMaxDeviation", log.areaRateMaxDeviation},
          {"AmaxInitial", log.Amax.empty() ? json(nullptr) : json(log.Amax.front())},
          {"AmaxFinal", log.Amax.empty() ? json(nullptr) : json(log.Amax.back())},
          {"stopReason", log.stopReason}};
}

json to_json(const ComparisonResult& r) {
  return {{"schema", "translab.comparison.v1"},
          {"samples", r.times.size()},
          {"initialDistance", r.initialDistance},
          {"minDistance", r.minDistance},
          {"allowance", r.allowance},
          {"finalTime", r.times.empty() ? 0.0 : r.times.back()},
          {"verdict", r.pass ? "PASS" : "FAIL"}};
}

json to_json(const SpruckXiaoReport& r) {
  return {{"schema", "translab.spruck-xiao.v1"},
          {"flipped", r.flipped},
          {"maskCount", r.maskCount},
          {"tau", r.tau},
          {"ratioMin", r.ratioMin},
          {"ratioMax", r.ratioMax},
          {"maxDefectDriftH", r.maxDefectH},
          {"maxDefectDriftK1", r.maxDefectK1},
          {"maxLhsInequality", r.maxLhs},
          {"fractionAboveTau", r.fractionAboveTau},
          {"fractionWithinTau", r.fractionWithinTau}};
}

json to_json(const FirstVariation& v) {
  return {{"schema", "translab.first-variation.v1"},
          {"derivative", v.derivative},
          {"areaPlus", v.areaPlus},
          {"areaMinus", v.areaMinus},
          {"epsilon", v.epsilon},
          {"bumpIntegral", v.bumpIntegral}};
}

json to_json(const GradHCheck& g) { return {{"schema", "translab.gradH.v1"}, {"maxDefect", g.maxDefect}}; }

void MeshExport::validate() const {
  for (std::size_t k = 0; k < vertices.size(); ++k)
    if (!vertices[k].allFinite())
      fail(ErrorCode::IoError, "vertex " + std::to_string(k) + " is not finite; refusing to export");
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (std::size_t idx : faces[f])
      if (idx >= vertices.size()) fail(ErrorCode::IoError, "face " + std::to_string(f) + " indexes past the vertices");
}

MeshExport mesh_from_grid(const GridFunction& u) {
  MeshExport m;
  m.vertices.reserve(u.size());
  for (int i = 0; i < u.nx; ++i)
    for (int j = 0; j < u.ny; ++j) m.vertices.emplace_back(u.x(i), u.y(j), u(i, j));
  for (int i = 0; i + 1 < u.nx; ++i)
    for (int j = 0; j + 1 < u.ny; ++j)
      m.faces.push_back({u.index(i, j), u.index(i + 1, j), u.index(i + 1, j + 1), u.index(i, j + 1)});
  return m;
}

MeshExport mesh_from_profile(const RadialProfile& p, int angular) {
  require(angular >= 3, ErrorCode::InvalidArgument, "need at least 3 angular samples");
  MeshExport m;
  const std::size_t na = static_cast<std::size_t>(angular);
  m.vertices.reserve(p.samples.size() * na);
  for (const RadialSample& s : p.samples)
    for (std::size_t a = 0; a < na; ++a) {
      const double phi = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(na);
      m.vertices.emplace_back(s.r * std::cos(phi), s.r * std::sin(phi), s.u);
    }
  for (std::size_t k = 0; k + 1 < p.samples.size(); ++k)
    for (std::size_t a = 0; a < na; ++a) {
      const std::size_t b = (a + 1) % na;
      m.faces.push_back({k * na + a, (k + 1) * na + a, (k + 1) * na + b, k * na + b});
    }
  return m;
}

void write_obj(std::ostream& os, const MeshExport& m) {
  m.validate();
  os << "# translab " << kVersion << "\n";
  for (const std::string& line : m.header) os << "# " << line << "\n";
  for (const Vec3& v : m.vertices) os << "v " << g17(v.x()) << ' ' << g17(v.y()) << ' ' << g17(v.z()) << '\n';
  for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
  check_stream(os, "obj");
}

void write_obj(const std::string& path, const MeshExport& m) {
  m.validate();
  std::ofstream f = open_out(path);
  write_obj(f, m);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f = open_out(path);
  f << text;
  check_stream(f, path);
}

}  // namespace translab
