// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "translab/cli.hpp"
#include "translab/errors.hpp"
#include "translab/io.hpp"

using namespace translab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "translab_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

ErrorCode usage_code(const std::vector<std::string>& args) {
  try {
    parse(args);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("flags set the elliptic block") {
  const RunConfig c = parse({"translab", "elliptic", "delta-wing", "--b", "2.0", "--L", "12"});
  CHECK(c.command == "elliptic delta-wing");
  CHECK(c.elliptic.b == 2.0);
  CHECK(c.elliptic.L == 12.0);
  CHECK(c.commandLine.find("--b 2.0") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  const fs::path cfg = write_config("override.toml", "[elliptic.delta-wing]\nb = 2.0\nL = 10\n");
  const RunConfig a = parse({"translab", "elliptic", "delta-wing", "--config", cfg.string()});
  CHECK(a.elliptic.b == 2.0);
  CHECK(a.elliptic.L == 10.0);
  const RunConfig b = parse({"translab", "elliptic", "delta-wing", "--config", cfg.string(), "--b", "3.0"});
  CHECK(b.elliptic.b == 3.0);
  CHECK(b.elliptic.L == 10.0);
}

TEST_CASE("precondition violations are usage errors") {
  CHECK(usage_code({"translab", "elliptic", "delta-wing", "--b", "-1"}) == ErrorCode::UsageError);
  CHECK(usage_code({"translab", "elliptic", "delta-wing", "--nx", "240"}) == ErrorCode::UsageError);
  CHECK(usage_code({"translab", "csf", "run", "--n", "2"}) == ErrorCode::UsageError);
  CHECK(usage_code({"translab", "radial", "fit", "--rlo", "50", "--rhi", "20"}) == ErrorCode::UsageError);
  try {
    parse({"translab", "elliptic", "delta-wing", "--b", "-1"});
  } catch (const Error& e) {
    CHECK(exit_code(e) == 2);
    CHECK(std::string(e.what()).find("--b") != std::string::npos);
  }
  CHECK(exit_code(Error(ErrorCode::MaxIterations, "x")) == 1);
}

TEST_CASE("unknown keys are errors") {
  const fs::path cfg = write_config("bogus.toml", "[elliptic.delta-wing]\nb = 2.0\nbogus = 1\n");
  try {
    parse({"translab", "elliptic", "delta-wing", "--config", cfg.string()});
    FAIL("expected UsageError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UsageError);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK(usage_code({"translab", "elliptic", "delta-wing", "--bogus", "1"}) == ErrorCode::UsageError);
  CHECK(usage_code({"translab", "nonsense"}) == ErrorCode::UsageError);
  CHECK(usage_code({"translab"}) == ErrorCode::UsageError);
}

TEST_CASE("help is returned, not executed") {
  const RunConfig c = parse({"translab", "csf", "run", "--help"});
  CHECK(c.command.empty());
  CHECK(c.helpText.find("--dt-safety") != std::string::npos);
}

TEST_CASE("parse_shape") {
  CHECK(parse_shape("circle:2", 64).points.size() == 64);
  CHECK_THROWS_AS(parse_shape("square:1", 64), Error);
  CHECK_THROWS_AS(parse_shape("ellipse:2", 64), Error);
}

TEST_CASE("dispatch writes the report and is deterministic") {
  const std::vector<std::string> args{"translab", "catalog", "residual", "--kind", "grim", "--h", "0.01", "--half-width-frac",
                                      "0.764"};
  auto once = [&] {
    std::ostringstream os;
    CHECK(dispatch(parse(args), os) == 0);
    return os.str();
  };
  const std::string text = once();
  CHECK(text == once());
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["schema"] == "translab.residual.v1");
  CHECK(j["maxAbs"].get<double>() <= 1e-3);
}

TEST_CASE("export obj from a grid csv") {
  const fs::path grid = scratch("grid.csv");
  write_grid_csv(grid.string(), GridFunction::centered(3, 3, 1.0, 1.0, [](double x, double y) { return x * y; }));
  const fs::path obj = scratch("grid.obj");
  std::ostringstream os;
  dispatch(parse({"translab", "export", "obj", "--in", grid.string(), "--out", obj.string()}), os);
  std::ifstream is(obj);
  std::size_t v = 0, f = 0;
  for (std::string line; std::getline(is, line);) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  CHECK(v == 9);
  CHECK(f == 4);
}
