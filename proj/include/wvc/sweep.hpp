#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wvc/checks.hpp"
#include "wvc/report.hpp"

namespace wvc {

// Any configuration problem: unparseable document, unknown key or name, or a
// parameter grid outside the admissible range of its check. The CLI maps it
// to exit status 2, before any report output exists.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ManifoldSpec {
  std::string entry;
  std::map<std::string, double> params;
};

// A named conformal factor (see make_conformal_factor) with its amplitude.
struct FactorSpec {
  std::string name;
  double c = 0.0;
};

/**
 * One configured check: the name plus per-parameter value lists. Parameters
 * the config omits fall back to per-check defaults; dimension-dependent ones
 * (p, q, l, radii, A0) are resolved per manifold at enumeration time.
 */
struct CheckSpec {
  std::string name;
  std::map<std::string, std::vector<double>> grids;
  std::vector<FactorSpec> factors;  // conformal checks only
  std::optional<int> grid_points;   // radial grid density where used
};

struct SweepConfig {
  std::vector<ManifoldSpec> manifolds;
  std::vector<CheckSpec> checks;
  Tolerances tolerances;
  int workers = 1;
};

// A fully resolved (manifold, check, parameter point) execution unit.
// params is in the check's canonical parameter order; it is also the report
// row order key, so enumeration order is the row order.
struct Cell {
  std::string check;
  ManifoldSpec manifold;
  std::string manifold_label;
  std::vector<std::pair<std::string, double>> params;
  std::optional<FactorSpec> factor;
  int grid_points = 0;
};

// pass | fail | inconclusive (quadrature budget) | rejected (precondition
// discovered at evaluation time). The latter two carry the reason in detail
// and leave the report's numeric fields NaN.
struct CellResult {
  std::string outcome;
  std::string detail;
  CheckReport report;
};

// Check names the sweep runner accepts, in canonical order.
std::vector<std::string> sweep_check_names();

// Parses the JSON config document; unknown keys anywhere are errors.
SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::string& path);

// euclidean + hyperbolic(1), four checks against the lambda = -1 model; runs
// in seconds and must pass everywhere.
SweepConfig builtin_smoke_config();

/**
 * Expands every (manifold x check x parameter point) cell and statically
 * validates each against its check's admissible range, throwing ConfigError
 * that names the violated constraint. Nothing is executed; a config that
 * enumerates cleanly can only fail at evaluation time for reasons the config
 * cannot see (quadrature budgets, properties of the profiles themselves).
 */
std::vector<Cell> enumerate_cells(const SweepConfig& config);

// Runs cells with a bounded worker pool (config.workers; the WVC_WORKERS
// environment variable overrides). Results are indexed like the input, so
// output order is independent of scheduling.
std::vector<CellResult> run_cells(const std::vector<Cell>& cells,
                                  const SweepConfig& config);

// One row per cell: check, manifold, parameters, lhs, rhs, margin, worst,
// outcome. All floats carry 17 significant digits; two runs of the same
// config are byte-identical.
std::string render_csv_report(const std::vector<Cell>& cells,
                              const std::vector<CellResult>& results);

// Structured variant with the full resolution metadata per cell.
std::string render_json_report(const std::vector<Cell>& cells,
                               const std::vector<CellResult>& results);

// Enumerates, runs, and writes report.csv / report.json under out_dir.
// Returns 0 when every cell passes, 1 otherwise; ConfigError propagates.
int run_sweep(const SweepConfig& config, const std::string& out_dir);

}  // namespace wvc
