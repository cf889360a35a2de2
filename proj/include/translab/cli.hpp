// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "translab/csf.hpp"
#include "translab/elliptic.hpp"
#include "translab/errors.hpp"

namespace translab {

/// Everything one invocation needs. Exactly one command is set.
struct RunConfig {
  std::string command;  ///< e.g. "elliptic delta-wing"
  std::string commandLine;
  std::string helpText;  ///< set when --help was requested; command is then empty

  struct Catalog {
    std::string kind = "grim";  ///< grim | tilted | plane
    double theta = 0.0;
    double h = 0.01;
    double halfWidthFrac = 0.9;
    double length = 1.0;  ///< half extent in the travel variable
  } catalog;

  struct Radial {
    std::string kind = "bowl";  ///< bowl | catenoid
    int n = 2;
    double rmax = 100.0;
    double h = 1e-3;
    double lambda = 1.0;
    std::string wing = "upper";  ///< upper | lower
    double rlo = 20.0;
    double rhi = 100.0;
  } radial;

  struct Elliptic {
    double b = 2.221441469079183;  // pi / sqrt(2)
    double L = 12.0;
    int nx = 241;
    int ny = 41;
    double shrink = 0.995;
    double bStart = 2.0;
    double bEnd = 4.0;
    int steps = 8;
    SolverConfig solver;
  } elliptic;

  struct Csf {
    std::string shape = "circle";  ///< circle | ellipse
    double r = 1.0;
    double a = 2.0;
    double b = 1.0;
    int n = 256;
    std::string shape1 = "circle:1";
    std::string shape2 = "circle:2";
    std::optional<double> gap;  ///< shift shape2 along +x to this clearance
    int sampleEvery = 20;
    FlowConfig flow;
  } csf;

  struct Analyze {
    std::string bump = "0,0,1.5";  ///< cx,cy,radius
    double eps = 1e-4;
    double windowFrac = 1.0;  ///< |y| <= windowFrac * max|y|
  } analyze;

  struct Export {
    int angular = 128;
  } exportObj;

  std::string in;
  std::string out;
  std::string report;
};

/// Parses argv (argv[0] is the program name). Config files (--config, TOML
/// sections named after the subcommand path, e.g. [elliptic.delta-wing]) are
/// read first and flags override them. Unknown keys, bad values and
/// precondition violations throw Error(UsageError).
RunConfig parse(int argc, const char* const* argv);
RunConfig parse(const std::vector<std::string>& args);

/// Runs the command, writing JSON reports to cfg.report or `out`.
/// Returns 0; numerical failures propagate as Error.
int dispatch(const RunConfig& cfg, std::ostream& out);

/// Maps an error to the process exit status: 2 for usage, 1 otherwise.
int exit_code(const Error& e);

/// "circle:R" or "ellipse:A,B" with n points.
CurveState parse_shape(const std::string& spec, int n);

}  // namespace translab
