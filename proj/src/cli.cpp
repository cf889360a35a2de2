// SPDX-License-Identifier: Apache-2.0
#include "translab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "translab/analysis.hpp"
#include "translab/catalog.hpp"
#include "translab/io.hpp"
#include "translab/numerics.hpp"
#include "translab/radial.hpp"

namespace translab {

namespace {

using nlohmann::json;

[[noreturn]] void usage(const std::string& key, const std::string& msg) {
  fail(ErrorCode::UsageError, key + ": " + msg);
}

void check(bool ok, const std::string& key, const std::string& msg) {
  if (!ok) usage(key, msg);
}

std::vector<double> parse_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) usage(key, "bad number '" + tok + "'");
    } catch (const std::logic_error&) {
      usage(key, "bad number '" + tok + "'");
    }
  }
  return out;
}

void flow_options(CLI::App* sub, RunConfig::Csf& c) {
  sub->add_option("--dt-safety", c.flow.dtSafety, "time step safety factor in (0, 1]");
  sub->add_option("--remesh-every", c.flow.remeshEvery, "steps between arclength remeshes");
  sub->add_option("--stop-amax", c.flow.stopAmax, "stop once max |kappa| reaches this");
  sub->add_option("--max-steps", c.flow.maxSteps, "step cap");
}

void solver_options(CLI::App* sub, RunConfig::Elliptic& e) {
  sub->add_option("--L", e.L, "truncation length");
  sub->add_option("--nx", e.nx, "nodes along x");
  sub->add_option("--ny", e.ny, "nodes across the strip");
  sub->add_option("--shrink", e.shrink, "fraction of the strip kept");
  sub->add_option("--tol", e.solver.tolResidual, "Newton residual tolerance");
  sub->add_option("--max-newton", e.solver.maxNewton, "Newton iteration cap");
  sub->add_option("--damping-min", e.solver.dampingMin, "line search floor");
  sub->add_option("--linear-tol", e.solver.linearTol, "relative linear residual bound");
  sub->add_flag("--verbose", e.solver.verbose, "print Newton progress to stderr");
}

void validate_elliptic(const RunConfig::Elliptic& e, const std::vector<double>& bs) {
  for (double b : bs) check(b > 0.5 * kPi, "--b", "strip half-width must exceed pi/2 (got " + std::to_string(b) + ")");
  check(e.L >= 4.0, "--L", "must be >= 4");
  check(e.nx >= 33 && e.ny >= 33, "--nx/--ny", "must be >= 33");
  check(e.nx % 2 == 1 && e.ny % 2 == 1, "--nx/--ny", "must be odd so the center is a node");
  check(e.shrink >= 0.9 && e.shrink < 1.0, "--shrink", "must lie in [0.9, 1)");
  check(e.solver.tolResidual > 0.0, "--tol", "must be positive");
  check(e.solver.maxNewton >= 1, "--max-newton", "must be >= 1");
  check(e.solver.dampingMin > 0.0 && e.solver.dampingMin <= 1.0, "--damping-min", "must lie in (0, 1]");
  check(e.solver.linearTol > 0.0, "--linear-tol", "must be positive");
}

void validate_flow(const FlowConfig& f) {
  check(f.dtSafety > 0.0 && f.dtSafety <= 1.0, "--dt-safety", "must lie in (0, 1]");
  check(f.remeshEvery >= 1, "--remesh-every", "must be >= 1");
  check(f.stopAmax > 0.0, "--stop-amax", "must be positive");
  check(f.maxSteps >= 1, "--max-steps", "must be >= 1");
}

void validate(RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "catalog residual") {
    auto& k = cfg.catalog;
    check(k.kind == "grim" || k.kind == "tilted" || k.kind == "plane", "--kind", "expected grim, tilted or plane");
    check(k.theta >= 0.0 && k.theta < 0.5 * kPi, "--theta", "must lie in [0, pi/2)");
    check(k.h > 0.0, "--h", "must be positive");
    check(k.halfWidthFrac > 0.0 && k.halfWidthFrac < 1.0, "--half-width-frac", "must lie in (0, 1)");
    check(k.length > 0.0, "--length", "must be positive");
  } else if (c == "radial shoot" || c == "radial fit") {
    auto& r = cfg.radial;
    if (c == "radial shoot") {
      check(r.kind == "bowl" || r.kind == "catenoid", "--kind", "expected bowl or catenoid");
      check(r.wing == "upper" || r.wing == "lower", "--wing", "expected upper or lower");
      check(r.n >= 2, "--n", "must be >= 2");
      check(r.rmax > 0.0, "--rmax", "must be positive");
      check(r.h > 0.0, "--h", "must be positive");
      check(r.lambda > 0.0, "--lambda", "must be positive");
      if (r.kind == "catenoid") check(r.rmax > r.lambda, "--rmax", "must exceed --lambda");
    } else {
      check(!cfg.in.empty(), "--in", "profile CSV required");
      check(r.rlo > 0.0 && r.rhi >= 2.0 * r.rlo, "--rlo/--rhi", "need 0 < rlo and rhi >= 2 rlo");
    }
  } else if (c == "elliptic delta-wing") {
    validate_elliptic(cfg.elliptic, {cfg.elliptic.b});
  } else if (c == "elliptic continuation") {
    validate_elliptic(cfg.elliptic, {cfg.elliptic.bStart, cfg.elliptic.bEnd});
    check(cfg.elliptic.steps >= 1, "--steps", "must be >= 1");
  } else if (c == "csf run") {
    auto& s = cfg.csf;
    check(s.shape == "circle" || s.shape == "ellipse", "--shape", "expected circle or ellipse");
    check(s.r > 0.0 && s.a > 0.0 && s.b > 0.0, "--r/--a/--b", "must be positive");
    check(s.n >= 8, "--n", "must be >= 8");
    validate_flow(s.flow);
  } else if (c == "csf compare") {
    auto& s = cfg.csf;
    check(s.n >= 8, "--n", "must be >= 8");
    check(s.sampleEvery >= 1, "--sample-every", "must be >= 1");
    if (s.gap) check(*s.gap > 0.0, "--gap", "must be positive");
    try {
      parse_shape(s.shape1, s.n);
      parse_shape(s.shape2, s.n);
    } catch (const Error& e) {
      usage("--shape1/--shape2", e.what());
    }
    validate_flow(s.flow);
  } else if (c.rfind("analyze", 0) == 0) {
    check(!cfg.in.empty(), "--in", "grid CSV required");
    check(cfg.analyze.windowFrac > 0.0 && cfg.analyze.windowFrac <= 1.0, "--window-frac", "must lie in (0, 1]");
    if (c == "analyze firstvar") {
      check(parse_list(cfg.analyze.bump, "--bump").size() == 3, "--bump", "expected cx,cy,radius");
      check(cfg.analyze.eps > 0.0, "--eps", "must be positive");
    }
  } else if (c == "export obj") {
    check(!cfg.in.empty(), "--in", "grid or profile CSV required");
    check(!cfg.out.empty(), "--out", "OBJ path required");
    check(cfg.exportObj.angular >= 3, "--angular", "must be >= 3");
  }
}

void emit(const RunConfig& cfg, std::ostream& out, const json& j) {
  if (cfg.report.empty())
    out << j.dump(2) << "\n";
  else
    write_json(cfg.report, j);
}

Region window_for(const GridFunction& u, double frac) {
  if (frac >= 1.0) return Region::everything();
  const double ay = frac * std::max(std::abs(u.y0), std::abs(u.y(u.ny - 1)));
  return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), -ay, ay};
}

int run_catalog(const RunConfig& cfg, std::ostream& out) {
  const auto& k = cfg.catalog;
  if (k.kind == "plane") {
    emit(cfg, out, {{"schema", "translab.residual.v1"}, {"maxAbs", 0.0}, {"l2", 0.0}, {"maxGradient", 0.0},
                    {"graph", false}});
    return 0;
  }
  const AnalyticTranslator t = k.kind == "grim" ? AnalyticTranslator::grim_reaper() : AnalyticTranslator::tilted(k.theta);
  const double ax = k.halfWidthFrac * t.half_width();
  const int hx_nodes = std::max(1, static_cast<int>(std::lround(ax / k.h)));
  const int hy_nodes = std::max(1, static_cast<int>(std::lround(k.length / k.h)));
  const GridFunction u = GridFunction::centered(2 * hx_nodes + 1, 2 * hy_nodes + 1, ax, k.length,
                                                [&](double x, double y) { return evaluate(t, x, y).u; });
  json j = to_json(residual_report(u));
  j["graph"] = true;
  j["nx"] = u.nx;
  j["ny"] = u.ny;
  emit(cfg, out, j);
  return 0;
}

int run_radial(const RunConfig& cfg, std::ostream& out) {
  const auto& r = cfg.radial;
  if (cfg.command == "radial fit") {
    emit(cfg, out, to_json(fit_asymptotics(read_profile_csv(cfg.in), r.rlo, r.rhi)));
    return 0;
  }
  RadialProfile p;
  if (r.kind == "bowl") {
    p = shoot_bowl(r.n, r.rmax, r.h);
  } else {
    CatenoidPair pair = shoot_catenoid(r.n, r.lambda, r.rmax, r.h);
    p = r.wing == "upper" ? std::move(pair.upper) : std::move(pair.lower);
  }
  if (cfg.out.empty()) {
    write_profile_csv(out, p);
    return 0;
  }
  write_profile_csv(cfg.out, p);
  emit(cfg, out, {{"schema", "translab.profile.v1"}, {"kind", to_string(p.kind)}, {"n", p.n},
                  {"samples", p.samples.size()}, {"rMax", p.r_max()}, {"uAtRMax", p.samples.back().u}});
  return 0;
}

int run_elliptic(const RunConfig& cfg, std::ostream& out) {
  const auto& e = cfg.elliptic;
  if (cfg.command == "elliptic delta-wing") {
    const SolveResult r = delta_wing(e.b, e.L, e.nx, e.ny, e.solver, e.shrink);
    if (!cfg.out.empty()) write_grid_csv(cfg.out, r.u);
    emit(cfg, out, to_json(r.report));
    return 0;
  }
  const ContinuationResult c = continuation_in_width(e.bStart, e.bEnd, e.steps, e.solver, e.L, e.nx, e.ny, e.shrink);
  if (!cfg.out.empty()) write_grid_csv(cfg.out, c.last);
  emit(cfg, out, to_json(c));
  return 0;
}

int run_csf(const RunConfig& cfg, std::ostream& out) {
  const auto& s = cfg.csf;
  if (cfg.command == "csf run") {
    const CurveState c0 = s.shape == "circle" ? CurveState::circle(s.r, s.n) : CurveState::ellipse(s.a, s.b, s.n);
    const SingularityLog log = run(c0, s.flow);
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) fail(ErrorCode::IoError, "cannot open '" + cfg.out + "' for writing");
      write_log_csv(f, log);
    }
    json j = to_json(log);
    const double diam = diameter(c0);
    j["diameter0"] = diam;
    j["corollaryHolds"] = 2.0 * log.fittedT <= diam * diam;
    if (!log.Amax.empty()) {
      j["remarkBound"] = 1.0 / (2.0 * log.Amax.front() * log.Amax.front());
      j["remarkHolds"] = log.fittedT >= 1.0 / (2.0 * log.Amax.front() * log.Amax.front());
    }
    emit(cfg, out, j);
    return 0;
  }
  const CurveState a = parse_shape(s.shape1, s.n);
  CurveState b = parse_shape(s.shape2, s.n);
  if (s.gap) {
    // Move b along +x until its leftmost point sits `gap` beyond a's rightmost.
    double amax = -std::numeric_limits<double>::infinity(), bmin = std::numeric_limits<double>::infinity();
    for (const Vec2& p : a.points) amax = std::max(amax, p.x());
    for (const Vec2& p : b.points) bmin = std::min(bmin, p.x());
    for (Vec2& p : b.points) p.x() += amax + *s.gap - bmin;
  }
  const ComparisonResult r = comparison_check(a, b, s.flow, s.sampleEvery);
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) fail(ErrorCode::IoError, "cannot open '" + cfg.out + "' for writing");
    write_comparison_csv(f, r);
  }
  emit(cfg, out, to_json(r));
  return 0;
}

int run_analyze(const RunConfig& cfg, std::ostream& out) {
  const GridFunction u = read_grid_csv(cfg.in);
  const Region w = window_for(u, cfg.analyze.windowFrac);
  if (cfg.command == "analyze firstvar") {
    const std::vector<double> b = parse_list(cfg.analyze.bump, "--bump");
    VariationSpec v;
    v.cx = b[0];
    v.cy = b[1];
    v.radius = b[2];
    v.epsilon = cfg.analyze.eps;
    emit(cfg, out, to_json(first_variation_check(u, v)));
    return 0;
  }
  const GeometryField g = graph_geometry(u);
  if (cfg.command == "analyze jacobi") {
    const ScalarField J = jacobi_residual(u, g);
    json j = {{"schema", "translab.jacobi.v1"}, {"maxAbsJacobi", max_abs_in(J, u, w)},
              {"maxTranslatorDefect", max_abs_in(translator_defect(g), u, w)},
              {"gradHMaxDefect", gradH_identity_check(u, g, w).maxDefect}};
    emit(cfg, out, j);
    return 0;
  }
  emit(cfg, out, to_json(spruck_xiao_report(u, g, w)));
  return 0;
}

int run_export(const RunConfig& cfg, std::ostream& out) {
  std::ifstream f(cfg.in, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot open '" + cfg.in + "' for reading");
  std::string first;
  std::getline(f, first);
  f.seekg(0);
  MeshExport m;
  if (first.rfind("# translab grid", 0) == 0)
    m = mesh_from_grid(read_grid_csv(f));
  else if (first.rfind("# translab profile", 0) == 0)
    m = mesh_from_profile(read_profile_csv(f), cfg.exportObj.angular);
  else
    fail(ErrorCode::IoError, "'" + cfg.in + "' is neither a translab grid nor a profile CSV");
  m.header.push_back("command: " + cfg.commandLine);
  m.header.push_back("source: " + cfg.in);
  write_obj(cfg.out, m);
  emit(cfg, out, {{"schema", "translab.mesh.v1"}, {"vertices", m.vertices.size()}, {"faces", m.faces.size()},
                  {"path", cfg.out}});
  return 0;
}

}  // namespace

CurveState parse_shape(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  require(colon != std::string::npos, ErrorCode::InvalidArgument, "shape '" + spec + "' needs kind:params");
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> v = parse_list(spec.substr(colon + 1), "shape");
  if (kind == "circle" && v.size() == 1 && v[0] > 0.0) return CurveState::circle(v[0], n);
  if (kind == "ellipse" && v.size() == 2 && v[0] > 0.0 && v[1] > 0.0) return CurveState::ellipse(v[0], v[1], n);
  fail(ErrorCode::InvalidArgument, "shape '" + spec + "' is not circle:R or ellipse:A,B with positive sizes");
}

RunConfig parse(const std::vector<std::string>& args) {
  RunConfig cfg;
  for (std::size_t k = 0; k < args.size(); ++k) cfg.commandLine += (k ? " " : "") + args[k];

  CLI::App app{"translab: translating solitons and curve shortening flow", "translab"};
  app.set_help_flag("--help", "print help for the selected command");
  app.set_config("--config", "", "TOML config; sections name the subcommand, e.g. [elliptic.delta-wing]");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->allow_config_extras(CLI::config_extras_mode::error);
    s->fallthrough();
    return s;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->require_subcommand(1);
    s->allow_config_extras(CLI::config_extras_mode::error);
    s->fallthrough();
    return s;
  };
  auto io_opts = [&](CLI::App* s, bool in, bool out) {
    if (in) s->add_option("--in", cfg.in, "input file");
    if (out) s->add_option("--out", cfg.out, "output file");
    s->add_option("--report", cfg.report, "JSON report path (default stdout)");
  };

  CLI::App* catalog = group("catalog", "closed-form translators");
  CLI::App* residual = leaf(catalog, "residual", "grid residual of a sampled closed-form translator");
  residual->add_option("--kind", cfg.catalog.kind, "grim | tilted | plane");
  residual->add_option("--theta", cfg.catalog.theta, "tilt angle in radians");
  residual->add_option("--h", cfg.catalog.h, "grid spacing");
  residual->add_option("--half-width-frac", cfg.catalog.halfWidthFrac, "fraction of the strip half-width");
  residual->add_option("--length", cfg.catalog.length, "half extent along the travel variable");
  io_opts(residual, false, false);

  CLI::App* radial = group("radial", "rotationally symmetric translators");
  CLI::App* shoot = leaf(radial, "shoot", "integrate a bowl or catenoid profile");
  shoot->add_option("--kind", cfg.radial.kind, "bowl | catenoid");
  shoot->add_option("--n", cfg.radial.n, "surface dimension");
  shoot->add_option("--rmax", cfg.radial.rmax, "outer radius");
  shoot->add_option("--h", cfg.radial.h, "nominal step");
  shoot->add_option("--lambda", cfg.radial.lambda, "catenoid neck radius");
  shoot->add_option("--wing", cfg.radial.wing, "upper | lower");
  io_opts(shoot, false, true);
  CLI::App* fit = leaf(radial, "fit", "fit the r^2, log r, 1 expansion");
  fit->add_option("--rlo", cfg.radial.rlo, "window start");
  fit->add_option("--rhi", cfg.radial.rhi, "window end");
  io_opts(fit, true, false);

  CLI::App* elliptic = group("elliptic", "Newton solves on strips");
  CLI::App* wing = leaf(elliptic, "delta-wing", "Delta-wing on a strip of half-width b");
  wing->add_option("--b", cfg.elliptic.b, "strip half-width (> pi/2)");
  solver_options(wing, cfg.elliptic);
  io_opts(wing, false, true);
  CLI::App* cont = leaf(elliptic, "continuation", "continuation in the strip width");
  cont->add_option("--b-start", cfg.elliptic.bStart, "first half-width");
  cont->add_option("--b-end", cfg.elliptic.bEnd, "last half-width");
  cont->add_option("--steps", cfg.elliptic.steps, "continuation steps");
  solver_options(cont, cfg.elliptic);
  io_opts(cont, false, true);

  CLI::App* csf = group("csf", "curve shortening flow");
  CLI::App* crun = leaf(csf, "run", "flow a curve to its singularity");
  crun->add_option("--shape", cfg.csf.shape, "circle | ellipse");
  crun->add_option("--r", cfg.csf.r, "circle radius");
  crun->add_option("--a", cfg.csf.a, "ellipse semi-axis along x");
  crun->add_option("--b", cfg.csf.b, "ellipse semi-axis along y");
  crun->add_option("--n", cfg.csf.n, "vertices");
  flow_options(crun, cfg.csf);
  io_opts(crun, false, true);
  CLI::App* cmp = leaf(csf, "compare", "co-evolve two disjoint curves");
  cmp->add_option("--shape1", cfg.csf.shape1, "circle:R or ellipse:A,B");
  cmp->add_option("--shape2", cfg.csf.shape2, "circle:R or ellipse:A,B");
  cmp->add_option("--gap", cfg.csf.gap, "translate shape2 along +x to this clearance");
  cmp->add_option("--n", cfg.csf.n, "vertices per curve");
  cmp->add_option("--sample-every", cfg.csf.sampleEvery, "steps between distance samples");
  flow_options(cmp, cfg.csf);
  io_opts(cmp, false, true);

  CLI::App* analyze = group("analyze", "identity and variational checks on a grid");
  CLI::App* sx = leaf(analyze, "sx", "H/kappa1 identities and inequality");
  CLI::App* jac = leaf(analyze, "jacobi", "L_f <e3, N>");
  CLI::App* fv = leaf(analyze, "firstvar", "first variation of the weighted area");
  for (CLI::App* s : {sx, jac, fv}) {
    s->add_option("--window-frac", cfg.analyze.windowFrac, "restrict to |y| <= frac max|y|");
    io_opts(s, true, false);
  }
  fv->add_option("--bump", cfg.analyze.bump, "cx,cy,radius");
  fv->add_option("--eps", cfg.analyze.eps, "perturbation size");

  CLI::App* exp = group("export", "mesh export");
  CLI::App* obj = leaf(exp, "obj", "OBJ quad mesh from a grid or profile CSV");
  obj->add_option("--angular", cfg.exportObj.angular, "angular samples for revolutions");
  io_opts(obj, true, true);

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* deepest = &app;
    for (CLI::App* g : app.get_subcommands()) {
      deepest = g;
      for (CLI::App* s : g->get_subcommands()) deepest = s;
    }
    cfg.helpText = deepest->help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    fail(ErrorCode::UsageError, e.what());
  }
  for (CLI::App* g : app.get_subcommands())
    for (CLI::App* s : g->get_subcommands()) cfg.command = g->get_name() + " " + s->get_name();
  validate(cfg);
  return cfg;
}

RunConfig parse(int argc, const char* const* argv) {
  return parse(std::vector<std::string>(argv, argv + argc));
}

int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.helpText.empty()) {
    out << cfg.helpText;
    return 0;
  }
  const std::string& c = cfg.command;
  if (c == "catalog residual") return run_catalog(cfg, out);
  if (c.rfind("radial", 0) == 0) return run_radial(cfg, out);
  if (c.rfind("elliptic", 0) == 0) return run_elliptic(cfg, out);
  if (c.rfind("csf", 0) == 0) return run_csf(cfg, out);
  if (c.rfind("analyze", 0) == 0) return run_analyze(cfg, out);
  if (c == "export obj") return run_export(cfg, out);
  fail(ErrorCode::UsageError, "unknown command '" + c + "'");
}

int exit_code(const Error& e) { return e.code() == ErrorCode::UsageError ? 2 : 1; }

}  // namespace translab
