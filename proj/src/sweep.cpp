#include "wvc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wvc/catalog.hpp"
#include "wvc/conformal.hpp"
#include "wvc/format.hpp"
#include "wvc/model_space.hpp"
#include "wvc/quadrature.hpp"

namespace wvc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// How an omitted parameter is defaulted at enumeration time. Radius defaults
// cap at the comparison range for positive lambda; the interior variant
// leaves room for the finite-difference stencils some checks place at R.
struct ParamDef {
  const char* key;
  enum Kind {
    kFixed,
    kRadiusFull,
    kRadiusInterior,
    kQuarterOfR,
    kRMax,
    kDimP,   // 3n/4, strictly between n/2 and n
    kDimQ,   // 4n, above the pq/(q-p) threshold for the defaults above
    kDimL,   // n
    kDerivedA0
  } kind = kFixed;
  double fixed = 0.0;
};

struct CheckDef {
  const char* name;
  std::vector<ParamDef> params;
  bool uses_grid = false;
  int default_grid_points = 0;
  bool conformal = false;
};

const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> defs = {
      {"riccati",
       {{"lambda"}, {"a"}, {"R", ParamDef::kRadiusFull}},
       true,
       256},
      {"integral_estimate",
       {{"lambda"}, {"a"}, {"p", ParamDef::kDimP}, {"R", ParamDef::kRadiusFull}}},
      {"dyadic_bound",
       {{"a"},
        {"p", ParamDef::kDimP},
        {"q", ParamDef::kDimQ},
        {"l", ParamDef::kDimL},
        {"R", ParamDef::kRadiusFull}}},
      {"psi_lp",
       {{"lambda"},
        {"a"},
        {"p", ParamDef::kDimP},
        {"q", ParamDef::kDimQ},
        {"l", ParamDef::kDimL},
        {"R", ParamDef::kRadiusFull}}},
      {"ratio_derivative",
       {{"lambda"}, {"a"}, {"R", ParamDef::kRadiusInterior}}},
      {"ratio_derivative_reduced",
       {{"lambda"},
        {"a"},
        {"p", ParamDef::kDimP},
        {"R", ParamDef::kRadiusInterior}}},
      // R precedes r so the quarter-of-R default can resolve.
      {"main_theorem",
       {{"lambda"},
        {"a"},
        {"p", ParamDef::kDimP},
        {"q", ParamDef::kDimQ},
        {"l", ParamDef::kDimL},
        {"R", ParamDef::kRadiusInterior},
        {"r", ParamDef::kQuarterOfR},
        {"R0", ParamDef::kRMax}}},
      {"petersen_wei",
       {{"lambda"},
        {"p", ParamDef::kDimP},
        {"R", ParamDef::kRadiusFull},
        {"r", ParamDef::kQuarterOfR}}},
      {"bounded_gradient_remark",
       {{"lambda"},
        {"a"},
        {"p", ParamDef::kDimP},
        {"R", ParamDef::kRadiusFull},
        {"r", ParamDef::kQuarterOfR}}},
      {"alpha_monotone",
       {{"lambda"}, {"R", ParamDef::kRadiusFull}},
       true,
       1024},
      {"conformal_be_lower_bound",
       {{"rho0"}, {"A0", ParamDef::kDerivedA0}, {"R", ParamDef::kRadiusFull}},
       true,
       64,
       true},
  };
  return defs;
}

const CheckDef* find_check(const std::string& name) {
  for (const CheckDef& def : check_registry()) {
    if (name == def.name) return &def;
  }
  return nullptr;
}

double comparison_cap(double lambda) {
  return lambda > 0.0 ? std::numbers::pi / (2.0 * std::sqrt(lambda))
                      : std::numeric_limits<double>::infinity();
}

double resolve_default(const ParamDef& def, int n, double r_max,
                       const std::vector<std::pair<std::string, double>>& got) {
  auto lookup = [&got](const char* key) {
    for (const auto& kv : got) {
      if (kv.first == key) return kv.second;
    }
    throw std::logic_error(std::string("unresolved parameter ") + key);
  };
  auto capped_radius = [&](double shrink) {
    double lim = r_max;
    for (const auto& kv : got) {
      if (kv.first == "lambda") lim = std::min(lim, comparison_cap(kv.second));
    }
    return shrink * lim;
  };
  switch (def.kind) {
    case ParamDef::kFixed:
      return def.fixed;
    case ParamDef::kRadiusFull:
      return capped_radius(1.0);
    case ParamDef::kRadiusInterior:
      return capped_radius(0.9);
    case ParamDef::kQuarterOfR:
      return lookup("R") / 4.0;
    case ParamDef::kRMax:
      return r_max;
    case ParamDef::kDimP:
      return 0.75 * n;
    case ParamDef::kDimQ:
      return 4.0 * n;
    case ParamDef::kDimL:
      return static_cast<double>(n);
    case ParamDef::kDerivedA0:
      return conformal_gradient_coefficient(n);
  }
  throw std::logic_error("unreachable parameter kind");
}

std::optional<double> cell_param(const Cell& cell, const char* key) {
  for (const auto& kv : cell.params) {
    if (kv.first == key) return kv.second;
  }
  return std::nullopt;
}

// Static admissibility rules, mirroring each check's preconditions so a bad
// grid is refused before anything runs. Messages quote the violated
// inequality in the checks' own wording.
void validate_cell(const Cell& cell, int n, double r_max,
                   const std::string& context) {
  auto fail = [&](const std::string& what) {
    throw ConfigError(context + cell.check + ": " + what);
  };
  auto describe = [](std::initializer_list<std::pair<const char*, double>>
                         values) {
    std::ostringstream out;
    const char* sep = " (";
    for (const auto& kv : values) {
      out << sep << kv.first << " = " << kv.second;
      sep = ", ";
    }
    out << ")";
    return out.str();
  };

  const double lambda = cell_param(cell, "lambda").value_or(0.0);
  const double cap = comparison_cap(lambda);

  if (auto a = cell_param(cell, "a"); a && !(*a >= 0.0)) {
    fail("requires a >= 0" + describe({{"a", *a}}));
  }
  const std::optional<double> radius = cell_param(cell, "R");
  if (radius) {
    if (!(*radius > 0.0 && *radius <= r_max)) {
      fail("requires 0 < R <= r_max" +
           describe({{"R", *radius}, {"r_max", r_max}}));
    }
    if (lambda > 0.0 && !(*radius <= cap * (1.0 + 1e-12))) {
      fail("requires R <= pi/(2 sqrt(lambda))" +
           describe({{"R", *radius}, {"lambda", lambda}}));
    }
  }
  if (auto r = cell_param(cell, "r")) {
    if (!(*r > 0.0 && radius && *r <= *radius)) {
      fail("requires 0 < r <= R" +
           describe({{"r", *r}, {"R", radius.value_or(kNan)}}));
    }
  }
  if (auto R0 = cell_param(cell, "R0")) {
    if (!(radius && *radius <= *R0 && *R0 <= r_max)) {
      fail("requires R <= R0 <= r_max" +
           describe({{"R0", *R0}, {"R", radius.value_or(kNan)},
                     {"r_max", r_max}}));
    }
  }

  const std::optional<double> p = cell_param(cell, "p");
  const std::optional<double> q = cell_param(cell, "q");
  const std::optional<double> l = cell_param(cell, "l");

  const bool wants_p_above_half_n =
      cell.check == "integral_estimate" || cell.check == "psi_lp" ||
      cell.check == "main_theorem" || cell.check == "petersen_wei" ||
      cell.check == "bounded_gradient_remark";
  if (wants_p_above_half_n && !(*p > n / 2.0)) {
    fail("requires p > n/2" + describe({{"p", *p}, {"n", double(n)}}));
  }
  if (cell.check == "integral_estimate" && !(*p < n)) {
    fail("requires p < n" + describe({{"p", *p}, {"n", double(n)}}));
  }
  if (cell.check == "dyadic_bound" && !(*p > 0.0)) {
    fail("requires p > 0" + describe({{"p", *p}}));
  }
  if (l) {
    if (!(*p < *l)) fail("requires p < l" + describe({{"p", *p}, {"l", *l}}));
    const bool computes_kappa = cell.check == "dyadic_bound" ||
                                cell.check == "psi_lp" ||
                                cell.check == "main_theorem";
    if (computes_kappa && !(n / 2.0 < *l && *l <= n)) {
      fail("requires n/2 < l <= n" + describe({{"l", *l}, {"n", double(n)}}));
    }
    if (!(*q > *p * *l / (*l - *p))) {
      fail("requires q > p l/(l - p)" +
           describe({{"q", *q}, {"p", *p}, {"l", *l}}));
    }
  }
  if (cell.check == "ratio_derivative_reduced" && !(*p >= 0.5)) {
    fail("requires p >= 1/2" + describe({{"p", *p}}));
  }
  if (cell.check == "petersen_wei" && !(lambda <= 0.0)) {
    fail("requires lambda <= 0" + describe({{"lambda", lambda}}));
  }

  const bool differentiates_at_R = cell.check == "ratio_derivative" ||
                                   cell.check == "ratio_derivative_reduced" ||
                                   cell.check == "main_theorem";
  if (differentiates_at_R && radius) {
    const double h = std::max(1e-4, 1e-3 * *radius);
    if (!(*radius + h <= r_max)) {
      fail("requires R + h <= r_max for the finite difference" +
           describe({{"R", *radius}, {"h", h}, {"r_max", r_max}}));
    }
    if (lambda > 0.0 && !(*radius + h <= cap)) {
      fail("requires R + h <= pi/(2 sqrt(lambda)) for the finite difference" +
           describe({{"R", *radius}, {"h", h}, {"lambda", lambda}}));
    }
  }

  if (cell.check == "conformal_be_lower_bound") {
    if (auto rho0 = cell_param(cell, "rho0"); !(*rho0 >= 0.0)) {
      fail("requires rho0 >= 0" + describe({{"rho0", *rho0}}));
    }
    if (auto A0 = cell_param(cell, "A0"); !(*A0 >= 0.0)) {
      fail("requires A0 >= 0" + describe({{"A0", *A0}}));
    }
    try {
      make_conformal_factor(cell.factor->name, cell.factor->c);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  if (cell.grid_points != 0 && cell.grid_points < 2) {
    fail("requires grid_points >= 2" +
         describe({{"grid_points", double(cell.grid_points)}}));
  }
}

CheckReport stub_report(const Cell& cell) {
  CheckReport rep;
  rep.check_name = cell.check;
  rep.manifold = cell.manifold_label;
  for (const auto& kv : cell.params) rep.parameters[kv.first] = kv.second;
  rep.lhs = rep.rhs = rep.margin = kNan;
  rep.worst_lo = rep.worst_hi = kNan;
  rep.pass = false;
  return rep;
}

CheckReport dispatch(const Cell& cell, const SweepConfig& config) {
  CheckConfig cc;
  cc.tol = config.tolerances;
  auto P = [&cell](const char* key) {
    const auto v = cell_param(cell, key);
    if (!v) {
      throw std::logic_error(std::string("cell misses parameter ") + key);
    }
    return *v;
  };

  RadialManifold m = make_manifold(cell.manifold.entry, cell.manifold.params);
  const std::string& name = cell.check;
  if (name == "riccati") {
    const auto grid = radial_grid(P("R"), cell.grid_points);
    return check_riccati(m, P("lambda"), P("a"), grid, cc);
  }
  if (name == "integral_estimate") {
    return check_integral_estimate(m, P("lambda"), P("a"), P("p"), P("R"), cc);
  }
  if (name == "dyadic_bound") {
    return check_dyadic_bound(m, P("a"), P("p"), P("q"), P("l"), P("R"),
                              std::nullopt, cc);
  }
  if (name == "psi_lp") {
    return check_psi_lp(m, P("lambda"), P("a"), P("p"), P("q"), P("l"), P("R"),
                        std::nullopt, cc);
  }
  if (name == "ratio_derivative") {
    return check_ratio_derivative(m, P("lambda"), P("a"), P("R"), cc);
  }
  if (name == "ratio_derivative_reduced") {
    return check_ratio_derivative_reduced(m, P("lambda"), P("a"), P("p"),
                                          P("R"), cc);
  }
  if (name == "main_theorem") {
    return check_main_theorem(m, P("lambda"), P("a"), P("p"), P("q"), P("l"),
                              P("r"), P("R"), P("R0"), cc);
  }
  if (name == "petersen_wei") {
    return check_petersen_wei(m, P("lambda"), P("p"), P("r"), P("R"), cc);
  }
  if (name == "bounded_gradient_remark") {
    return check_bounded_gradient_remark(m, P("lambda"), P("a"), P("p"),
                                         P("r"), P("R"), cc);
  }
  if (name == "alpha_monotone") {
    const ModelSpace model(m.dimension(), P("lambda"));
    const auto grid = radial_grid(P("R"), cell.grid_points);
    return check_alpha_monotone(model, grid, cc.tol);
  }
  if (name == "conformal_be_lower_bound") {
    const ConformalPair pair(
        std::move(m), make_conformal_factor(cell.factor->name, cell.factor->c));
    const auto grid = radial_grid(P("R"), cell.grid_points);
    return conformal_be_lower_bound(pair, P("rho0"), P("A0"), grid, cc.tol);
  }
  throw std::logic_error("unregistered check " + name);
}

CellResult run_one(const Cell& cell, const SweepConfig& config) {
  CellResult res;
  res.report = stub_report(cell);
  try {
    res.report = dispatch(cell, config);
    res.outcome = res.report.pass ? "pass" : "fail";
  } catch (const QuadratureError& e) {
    res.outcome = "inconclusive";
    res.detail = e.what();
  } catch (const std::exception& e) {
    res.outcome = "rejected";
    res.detail = e.what();
  }
  return res;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::ostringstream out;
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out << "\\\"";
        break;
      case '\\':
        out << "\\\\";
        break;
      case '\n':
        out << "\\n";
        break;
      case '\t':
        out << "\\t";
        break;
      case '\r':
        out << "\\r";
        break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out << buf;
        } else {
          out << c;
        }
    }
  }
  return out.str();
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_float(v);
}

// ------------------------------------------------------------------
// Config parsing

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
    }
  }
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": expected a finite number");
  return x;
}

std::vector<double> number_list(const json& v, const std::string& where) {
  std::vector<double> out;
  if (v.is_array()) {
    if (v.empty()) throw ConfigError(where + ": expected a non-empty list");
    for (size_t i = 0; i < v.size(); ++i) {
      out.push_back(number_at(v[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
  }
  out.push_back(number_at(v, where));
  return out;
}

ManifoldSpec parse_manifold(const json& v, const std::string& where) {
  if (!v.is_object()) throw ConfigError(where + ": expected an object");
  require_keys(v, {"entry", "params"}, where);
  if (!v.contains("entry") || !v["entry"].is_string()) {
    throw ConfigError(where + ": requires a string \"entry\"");
  }
  ManifoldSpec spec;
  spec.entry = v["entry"].get<std::string>();
  if (v.contains("params")) {
    const json& params = v["params"];
    if (!params.is_object()) {
      throw ConfigError(where + ".params: expected an object");
    }
    for (const auto& item : params.items()) {
      spec.params[item.key()] =
          number_at(item.value(), where + ".params." + item.key());
    }
  }
  return spec;
}

CheckSpec parse_check(const json& v, const std::string& where) {
  if (!v.is_object()) throw ConfigError(where + ": expected an object");
  if (!v.contains("name") || !v["name"].is_string()) {
    throw ConfigError(where + ": requires a string \"name\"");
  }
  CheckSpec spec;
  spec.name = v["name"].get<std::string>();
  const CheckDef* def = find_check(spec.name);
  if (def == nullptr) {
    throw ConfigError(where + ": unknown check \"" + spec.name + "\"");
  }

  std::vector<const char*> allowed = {"name"};
  for (const ParamDef& p : def->params) allowed.push_back(p.key);
  if (def->uses_grid) allowed.push_back("grid_points");
  if (def->conformal) allowed.push_back("factors");
  for (const auto& item : v.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      throw ConfigError(where + ": unknown key \"" + item.key() + "\" for " +
                        spec.name);
    }
  }

  for (const ParamDef& p : def->params) {
    if (v.contains(p.key)) {
      spec.grids[p.key] = number_list(v[p.key], where + "." + p.key);
    }
  }
  if (v.contains("grid_points")) {
    if (!v["grid_points"].is_number_integer()) {
      throw ConfigError(where + ".grid_points: expected an integer");
    }
    spec.grid_points = v["grid_points"].get<int>();
    if (*spec.grid_points < 2) {
      throw ConfigError(where + ".grid_points: requires a value >= 2");
    }
  }
  if (def->conformal) {
    if (!v.contains("factors")) {
      throw ConfigError(where + ": " + spec.name +
                        " requires a \"factors\" list");
    }
    const json& factors = v["factors"];
    if (!factors.is_array() || factors.empty()) {
      throw ConfigError(where + ".factors: expected a non-empty list");
    }
    for (size_t i = 0; i < factors.size(); ++i) {
      const std::string fwhere = where + ".factors[" + std::to_string(i) + "]";
      const json& f = factors[i];
      if (!f.is_object()) throw ConfigError(fwhere + ": expected an object");
      require_keys(f, {"name", "c"}, fwhere);
      if (!f.contains("name") || !f["name"].is_string()) {
        throw ConfigError(fwhere + ": requires a string \"name\"");
      }
      FactorSpec fs;
      fs.name = f["name"].get<std::string>();
      if (f.contains("c")) fs.c = number_at(f["c"], fwhere + ".c");
      spec.factors.push_back(fs);
    }
  }
  return spec;
}

}  // namespace

std::vector<std::string> sweep_check_names() {
  std::vector<std::string> names;
  for (const CheckDef& def : check_registry()) names.emplace_back(def.name);
  return names;
}

SweepConfig parse_sweep_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  require_keys(doc, {"manifolds", "checks", "tolerances", "workers"}, "config");

  SweepConfig config;
  if (!doc.contains("manifolds") || !doc["manifolds"].is_array() ||
      doc["manifolds"].empty()) {
    throw ConfigError("config: requires a non-empty \"manifolds\" list");
  }
  for (size_t i = 0; i < doc["manifolds"].size(); ++i) {
    config.manifolds.push_back(parse_manifold(
        doc["manifolds"][i], "manifolds[" + std::to_string(i) + "]"));
  }
  if (!doc.contains("checks") || !doc["checks"].is_array() ||
      doc["checks"].empty()) {
    throw ConfigError("config: requires a non-empty \"checks\" list");
  }
  for (size_t i = 0; i < doc["checks"].size(); ++i) {
    config.checks.push_back(
        parse_check(doc["checks"][i], "checks[" + std::to_string(i) + "]"));
  }
  if (doc.contains("tolerances")) {
    const json& tol = doc["tolerances"];
    if (!tol.is_object()) throw ConfigError("tolerances: expected an object");
    require_keys(tol, {"abs_tol", "rel_tol", "fd_rel", "monotone_tol"},
                 "tolerances");
    auto read = [&tol](const char* key, double* out) {
      if (!tol.contains(key)) return;
      const double v = number_at(tol[key], std::string("tolerances.") + key);
      if (!(v >= 0.0)) {
        throw ConfigError(std::string("tolerances.") + key +
                          ": requires a value >= 0");
      }
      *out = v;
    };
    read("abs_tol", &config.tolerances.abs_tol);
    read("rel_tol", &config.tolerances.rel_tol);
    read("fd_rel", &config.tolerances.fd_rel);
    read("monotone_tol", &config.tolerances.monotone_tol);
  }
  if (doc.contains("workers")) {
    if (!doc["workers"].is_number_integer()) {
      throw ConfigError("workers: expected an integer");
    }
    config.workers = doc["workers"].get<int>();
    if (config.workers < 1 || config.workers > 256) {
      throw ConfigError("workers: requires a value in [1, 256]");
    }
  }
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_sweep_config(buf.str());
}

SweepConfig builtin_smoke_config() {
  SweepConfig config;
  config.manifolds = {
      {"euclidean", {{"n", 3.0}, {"r_max", 5.0}}},
      {"hyperbolic", {{"k", 1.0}, {"n", 3.0}, {"r_max", 5.0}}},
  };
  config.checks = {
      {"riccati", {{"lambda", {-1.0}}}, {}, std::nullopt},
      {"psi_lp", {{"lambda", {-1.0}}}, {}, std::nullopt},
      {"ratio_derivative", {{"lambda", {-1.0}}}, {}, std::nullopt},
      {"petersen_wei", {{"lambda", {-1.0}}}, {}, std::nullopt},
  };
  config.workers = 2;
  return config;
}

std::vector<Cell> enumerate_cells(const SweepConfig& config) {
  if (config.manifolds.empty()) {
    throw ConfigError("config: requires a non-empty \"manifolds\" list");
  }
  if (config.checks.empty()) {
    throw ConfigError("config: requires a non-empty \"checks\" list");
  }

  std::vector<Cell> cells;
  for (size_t mi = 0; mi < config.manifolds.size(); ++mi) {
    const ManifoldSpec& ms = config.manifolds[mi];
    const std::string mwhere = "manifolds[" + std::to_string(mi) + "]";
    int n = 0;
    double r_max = 0.0;
    std::string label;
    try {
      const RadialManifold m = make_manifold(ms.entry, ms.params);
      n = m.dimension();
      r_max = m.r_max();
      label = manifold_label(ms.entry, ms.params);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(mwhere + ": " + e.what());
    }

    for (size_t ci = 0; ci < config.checks.size(); ++ci) {
      const CheckSpec& spec = config.checks[ci];
      const std::string cwhere = "checks[" + std::to_string(ci) + "]";
      const CheckDef* def = find_check(spec.name);
      if (def == nullptr) {
        throw ConfigError(cwhere + ": unknown check \"" + spec.name + "\"");
      }
      for (const auto& grid : spec.grids) {
        bool known = false;
        for (const ParamDef& p : def->params) known |= grid.first == p.key;
        if (!known) {
          throw ConfigError(cwhere + ": unknown parameter \"" + grid.first +
                            "\" for " + spec.name);
        }
      }
      if (!def->conformal && !spec.factors.empty()) {
        throw ConfigError(cwhere + ": " + spec.name +
                          " does not take conformal factors");
      }

      std::vector<FactorSpec> factors = spec.factors;
      if (def->conformal && factors.empty()) {
        throw ConfigError(cwhere + ": " + spec.name +
                          " requires a \"factors\" list");
      }
      if (!def->conformal) factors = {FactorSpec{}};  // single placeholder

      // Odometer over the user-supplied grids, in canonical parameter
      // order; omitted parameters resolve per manifold.
      std::vector<const std::vector<double>*> user_dims;
      std::vector<const ParamDef*> user_defs;
      for (const ParamDef& p : def->params) {
        const auto it = spec.grids.find(p.key);
        if (it != spec.grids.end()) {
          user_dims.push_back(&it->second);
          user_defs.push_back(&p);
        }
      }

      for (const FactorSpec& factor : factors) {
        std::vector<size_t> odo(user_dims.size(), 0);
        while (true) {
          Cell cell;
          cell.check = spec.name;
          cell.manifold = ms;
          cell.manifold_label = label;
          if (def->conformal) {
            cell.factor = factor;
            std::ostringstream full;
            full << label << " with " << factor.name << "(c=" << factor.c
                 << ")";
            cell.manifold_label = full.str();
          }
          cell.grid_points = def->uses_grid
                                 ? spec.grid_points.value_or(
                                       def->default_grid_points)
                                 : 0;
          for (const ParamDef& p : def->params) {
            double value = 0.0;
            bool resolved = false;
            for (size_t d = 0; d < user_defs.size(); ++d) {
              if (user_defs[d] == &p) {
                value = (*user_dims[d])[odo[d]];
                resolved = true;
                break;
              }
            }
            if (!resolved) value = resolve_default(p, n, r_max, cell.params);
            cell.params.emplace_back(p.key, value);
          }
          validate_cell(cell, n, r_max,
                        cwhere + " on \"" + cell.manifold_label + "\": ");
          cells.push_back(std::move(cell));

          // Advance the odometer, last dimension fastest.
          bool wrapped = true;
          for (size_t d = user_dims.size(); d-- > 0;) {
            if (++odo[d] < user_dims[d]->size()) {
              wrapped = false;
              break;
            }
            odo[d] = 0;
          }
          if (wrapped) break;
        }
      }
    }
  }
  return cells;
}

std::vector<CellResult> run_cells(const std::vector<Cell>& cells,
                                  const SweepConfig& config) {
  int workers = config.workers;
  if (const char* env = std::getenv("WVC_WORKERS")) {
    try {
      workers = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError("WVC_WORKERS: expected a positive integer");
    }
    if (workers < 1 || workers > 256) {
      throw ConfigError("WVC_WORKERS: requires a value in [1, 256]");
    }
  }
  workers = std::min(
      workers, static_cast<int>(std::max<size_t>(cells.size(), size_t{1})));

  std::vector<CellResult> results(cells.size());
  if (workers <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) {
      results[i] = run_one(cells[i], config);
    }
    return results;
  }

  std::atomic<size_t> next{0};
  auto body = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < cells.size();) {
      results[i] = run_one(cells[i], config);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  return results;
}

std::string render_csv_report(const std::vector<Cell>& cells,
                              const std::vector<CellResult>& results) {
  std::ostringstream out;
  out << "check,manifold,parameters,lhs,rhs,margin,worst,outcome\n";
  for (size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    const CellResult& res = results[i];
    std::ostringstream params;
    const char* sep = "";
    for (const auto& kv : cell.params) {
      params << sep << kv.first << "=" << format_float(kv.second);
      sep = ";";
    }
    out << csv_field(cell.check) << ',' << csv_field(cell.manifold_label)
        << ',' << csv_field(params.str()) << ','
        << format_float(res.report.lhs) << ',' << format_float(res.report.rhs)
        << ',' << format_float(res.report.margin) << ','
        << format_float(res.report.worst_lo) << ',' << res.outcome << '\n';
  }
  return out.str();
}

std::string render_json_report(const std::vector<Cell>& cells,
                               const std::vector<CellResult>& results) {
  std::ostringstream out;
  out << "{\n  \"cells\": [";
  for (size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    const CellResult& res = results[i];
    const CheckReport& rep = res.report;
    out << (i == 0 ? "\n" : ",\n");
    out << "    {\n";
    out << "      \"check\": \"" << json_escape(cell.check) << "\",\n";
    out << "      \"manifold\": \"" << json_escape(cell.manifold_label)
        << "\",\n";
    out << "      \"parameters\": {";
    const char* sep = "";
    for (const auto& kv : cell.params) {
      out << sep << "\"" << json_escape(kv.first)
          << "\": " << json_number(kv.second);
      sep = ", ";
    }
    out << "},\n";
    out << "      \"lhs\": " << json_number(rep.lhs) << ",\n";
    out << "      \"rhs\": " << json_number(rep.rhs) << ",\n";
    out << "      \"margin\": " << json_number(rep.margin) << ",\n";
    out << "      \"worst_lo\": " << json_number(rep.worst_lo) << ",\n";
    out << "      \"worst_hi\": " << json_number(rep.worst_hi) << ",\n";
    out << "      \"outcome\": \"" << json_escape(res.outcome) << "\",\n";
    out << "      \"detail\": \"" << json_escape(res.detail) << "\",\n";
    out << "      \"resolution\": {\"grid_points\": "
        << rep.resolution.grid_points
        << ", \"abs_tol\": " << json_number(rep.resolution.abs_tol)
        << ", \"rel_tol\": " << json_number(rep.resolution.rel_tol)
        << ", \"quad_error\": " << json_number(rep.resolution.quad_error)
        << ", \"fd_error\": " << json_number(rep.resolution.fd_error)
        << ", \"notes\": \"" << json_escape(rep.resolution.notes) << "\"}\n";
    out << "    }";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

int run_sweep(const SweepConfig& config, const std::string& out_dir) {
  const std::vector<Cell> cells = enumerate_cells(config);
  const std::vector<CellResult> results = run_cells(cells, config);

  std::filesystem::create_directories(out_dir);
  const auto write = [&](const std::string& name, const std::string& body) {
    const std::string path = out_dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write report file \"" + path + "\"");
    out << body;
  };
  write("report.csv", render_csv_report(cells, results));
  write("report.json", render_json_report(cells, results));

  for (const CellResult& res : results) {
    if (res.outcome != "pass") return 1;
  }
  return 0;
}

}  // namespace wvc
