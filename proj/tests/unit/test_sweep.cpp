#include "wvc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"

using wvc::Cell;
using wvc::CellResult;
using wvc::CheckSpec;
using wvc::ConfigError;
using wvc::ManifoldSpec;
using wvc::SweepConfig;

namespace {

void check_config_error(const char* needle, const std::string& text) {
  try {
    const SweepConfig config = wvc::parse_sweep_config(text);
    wvc::enumerate_cells(config);
    FAIL("expected a config error mentioning \"", needle, "\"");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

constexpr const char* kSmokeManifolds = R"(
  "manifolds": [
    {"entry": "euclidean", "params": {"r_max": 5.0}},
    {"entry": "hyperbolic", "params": {"n": 3, "r_max": 5.0}}
  ])";

}  // namespace

TEST_CASE("check name catalog") {
  const std::vector<std::string> names = wvc::sweep_check_names();
  CHECK(names.size() == 11);
  CHECK(names.front() == "riccati");
  for (const char* expected :
       {"integral_estimate", "dyadic_bound", "psi_lp", "ratio_derivative",
        "ratio_derivative_reduced", "main_theorem", "petersen_wei",
        "bounded_gradient_remark", "alpha_monotone",
        "conformal_be_lower_bound"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
}

TEST_CASE("builtin smoke sweep passes everywhere") {
  const SweepConfig config = wvc::builtin_smoke_config();
  const std::vector<Cell> cells = wvc::enumerate_cells(config);
  CHECK(cells.size() == 8);
  // Manifold-major enumeration: all checks of one manifold, then the next.
  for (size_t i = 0; i < 4; ++i) {
    CHECK(cells[i].manifold.entry == cells[0].manifold.entry);
    CHECK(cells[4 + i].manifold.entry == cells[4].manifold.entry);
  }
  CHECK(cells[0].manifold.entry != cells[4].manifold.entry);

  const std::vector<CellResult> results = wvc::run_cells(cells, config);
  REQUIRE(results.size() == cells.size());
  for (const CellResult& res : results) {
    CHECK(res.outcome == "pass");
    CHECK(res.report.pass);
  }
}

TEST_CASE("reports are byte-identical across runs and worker counts") {
  const SweepConfig config = wvc::builtin_smoke_config();
  const std::vector<Cell> cells = wvc::enumerate_cells(config);

  const std::vector<CellResult> first = wvc::run_cells(cells, config);
  const std::vector<CellResult> second = wvc::run_cells(cells, config);
  CHECK(wvc::render_csv_report(cells, first) ==
        wvc::render_csv_report(cells, second));
  CHECK(wvc::render_json_report(cells, first) ==
        wvc::render_json_report(cells, second));

  // The environment override changes scheduling only, never content.
  setenv("WVC_WORKERS", "4", 1);
  const std::vector<CellResult> wide = wvc::run_cells(cells, config);
  unsetenv("WVC_WORKERS");
  CHECK(wvc::render_csv_report(cells, wide) ==
        wvc::render_csv_report(cells, first));
}

TEST_CASE("csv report shape") {
  const SweepConfig config = wvc::builtin_smoke_config();
  const std::vector<Cell> cells = wvc::enumerate_cells(config);
  const std::vector<CellResult> results = wvc::run_cells(cells, config);
  const std::string csv = wvc::render_csv_report(cells, results);

  std::vector<std::string> lines;
  std::string::size_type pos = 0;
  while (pos < csv.size()) {
    const auto next = csv.find('\n', pos);
    lines.push_back(csv.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  REQUIRE(lines.size() == cells.size() + 1);
  CHECK(lines[0] == "check,manifold,parameters,lhs,rhs,margin,worst,outcome");
  for (size_t i = 0; i < cells.size(); ++i) {
    const std::string& row = lines[i + 1];
    CHECK(row.rfind(cells[i].check + ",", 0) == 0);
    CHECK(row.find(",pass") != std::string::npos);
  }
}

TEST_CASE("config parsing rejects malformed documents") {
  check_config_error("config parse error", "not json at all");
  check_config_error("expected a JSON object", "[1, 2]");
  check_config_error("unknown key \"extra\"", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "riccati"}],
    "extra": 1
  })");
  check_config_error("requires a non-empty \"manifolds\" list", R"({
    "manifolds": [],
    "checks": [{"name": "riccati"}]
  })");
  check_config_error("unknown check \"frobnicate\"", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "frobnicate"}]
  })");
  check_config_error("unknown key \"zeta\" for riccati", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "riccati", "zeta": [1]}]
  })");
  check_config_error("unknown key \"factors\" for riccati", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "riccati", "factors": [{"name": "zero"}]}]
  })");
  check_config_error("requires a \"factors\" list", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "conformal_be_lower_bound", "rho0": [0.0]}]
  })");
  check_config_error("workers: requires a value in [1, 256]", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "riccati"}],
    "workers": 0
  })");
  check_config_error("workers: expected an integer", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "riccati"}],
    "workers": 1.5
  })");
  check_config_error("grid_points: requires a value >= 2", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "riccati", "grid_points": 1}]
  })");
  check_config_error("unknown key \"typo_tol\"", R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "riccati"}],
    "tolerances": {"typo_tol": 1e-9}
  })");
}

TEST_CASE("enumeration validates manifolds and parameter windows") {
  check_config_error("unknown manifold", R"({
    "manifolds": [{"entry": "moebius"}],
    "checks": [{"name": "riccati"}]
  })");
  check_config_error("unknown parameter \"k\"", R"({
    "manifolds": [{"entry": "euclidean", "params": {"k": 2}}],
    "checks": [{"name": "riccati"}]
  })");
  // A grid value on the boundary of the admissible window is refused before
  // anything runs.
  check_config_error("requires p > n/2", R"({
    "manifolds": [{"entry": "hyperbolic", "params": {"n": 3}}],
    "checks": [{"name": "psi_lp", "p": [1.5]}]
  })");
}

TEST_CASE("enumeration resolves per-dimension defaults") {
  const std::string text = std::string("{") + kSmokeManifolds + R"(,
    "checks": [{"name": "main_theorem",
                "lambda": [0.0, -1.0], "a": [0.0, 0.5]}]
  })";
  const SweepConfig config = wvc::parse_sweep_config(text);
  const std::vector<Cell> cells = wvc::enumerate_cells(config);
  REQUIRE(cells.size() == 8);

  std::set<std::pair<double, double>> combos;
  for (size_t i = 0; i < 4; ++i) {
    const Cell& cell = cells[i];
    CHECK(cell.manifold.entry == "euclidean");
    REQUIRE(cell.params.size() == 8);
    CHECK(cell.params[0].first == "lambda");
    CHECK(cell.params[1].first == "a");
    combos.insert({cell.params[0].second, cell.params[1].second});
    // n = 3 with r_max = 5: p = 3n/4, q = 4n, l = n, R = 0.9 r_max,
    // r = R/4, R0 = r_max.
    CHECK(cell.params[2] == std::pair<std::string, double>{"p", 2.25});
    CHECK(cell.params[3] == std::pair<std::string, double>{"q", 12.0});
    CHECK(cell.params[4] == std::pair<std::string, double>{"l", 3.0});
    CHECK(cell.params[5] == std::pair<std::string, double>{"R", 4.5});
    CHECK(cell.params[6] == std::pair<std::string, double>{"r", 1.125});
    CHECK(cell.params[7] == std::pair<std::string, double>{"R0", 5.0});
  }
  CHECK(combos.size() == 4);
}

TEST_CASE("radius defaults respect the positive-curvature cap") {
  const std::string text = R"({
    "manifolds": [{"entry": "euclidean"}],
    "checks": [{"name": "ratio_derivative", "lambda": [1.0]}]
  })";
  const std::vector<Cell> cells =
      wvc::enumerate_cells(wvc::parse_sweep_config(text));
  REQUIRE(cells.size() == 1);
  REQUIRE(cells[0].params.size() == 3);
  CHECK(cells[0].params[2].first == "R");
  CHECK(cells[0].params[2].second ==
        doctest::Approx(0.45 * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("evaluation-time precondition maps to a rejected cell") {
  SweepConfig config;
  config.manifolds = {{"gaussian_soliton", {}}};
  config.checks = {{"bounded_gradient_remark",
                    {{"lambda", {0.0}}, {"a", {0.0}}},
                    {},
                    std::nullopt}};
  const std::vector<Cell> cells = wvc::enumerate_cells(config);
  REQUIRE(cells.size() == 1);
  const std::vector<CellResult> results = wvc::run_cells(cells, config);
  REQUIRE(results.size() == 1);
  CHECK(results[0].outcome == "rejected");
  CHECK(results[0].detail.find("sup|f'|") != std::string::npos);
  CHECK(std::isnan(results[0].report.lhs));

  const std::string csv = wvc::render_csv_report(cells, results);
  CHECK(csv.find(",rejected") != std::string::npos);
  CHECK(csv.find("nan") != std::string::npos);
}

TEST_CASE("sweep driver writes reports and status") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wvc_sweep_unit";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const int status = wvc::run_sweep(wvc::builtin_smoke_config(), dir.string());
  CHECK(status == 0);
  for (const char* name : {"report.csv", "report.json"}) {
    const fs::path path = dir / name;
    REQUIRE(fs::exists(path));
    CHECK(fs::file_size(path) > 0);
  }
  std::ifstream in(dir / "report.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "check,manifold,parameters,lhs,rhs,margin,worst,outcome");
  fs::remove_all(dir);
}

TEST_CASE("config errors leave no report behind") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "wvc_sweep_unit_bad";
  fs::remove_all(dir);
  fs::create_directories(dir);

  SweepConfig config = wvc::builtin_smoke_config();
  config.checks.push_back({"psi_lp", {{"p", {1.5}}}, {}, std::nullopt});
  CHECK_THROWS_AS(wvc::run_sweep(config, dir.string()), ConfigError);
  CHECK_FALSE(fs::exists(dir / "report.csv"));
  CHECK_FALSE(fs::exists(dir / "report.json"));
  fs::remove_all(dir);
}
