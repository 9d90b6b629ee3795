#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wvc/catalog.hpp"
#include "wvc/constants.hpp"
#include "wvc/format.hpp"
#include "wvc/model_space.hpp"
#include "wvc/norms.hpp"
#include "wvc/sweep.hpp"

namespace {

struct OutcomeCounts {
  int pass = 0;
  int fail = 0;
  int inconclusive = 0;
  int rejected = 0;
};

OutcomeCounts tally(const std::vector<wvc::CellResult>& results) {
  OutcomeCounts c;
  for (const auto& res : results) {
    if (res.outcome == "pass") {
      ++c.pass;
    } else if (res.outcome == "fail") {
      ++c.fail;
    } else if (res.outcome == "inconclusive") {
      ++c.inconclusive;
    } else {
      ++c.rejected;
    }
  }
  return c;
}

void print_summary(const OutcomeCounts& c, size_t total) {
  std::cout << "cells: " << total << ", pass: " << c.pass
            << ", fail: " << c.fail << ", inconclusive: " << c.inconclusive
            << ", rejected: " << c.rejected << "\n";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wvc::ConfigError("cannot write \"" + path + "\"");
  out << body;
}

int status_from(const OutcomeCounts& c) {
  return (c.fail + c.inconclusive + c.rejected) == 0 ? 0 : 1;
}

int run_check_command(const std::string& name, const std::string& config_path,
                      const std::string& out_path) {
  wvc::SweepConfig config = config_path.empty()
                                ? wvc::builtin_smoke_config()
                                : wvc::load_sweep_config(config_path);
  std::vector<wvc::CheckSpec> picked;
  for (const auto& spec : config.checks) {
    if (spec.name == name) picked.push_back(spec);
  }
  if (picked.empty()) {
    wvc::CheckSpec spec;
    spec.name = name;
    if (name == "conformal_be_lower_bound") {
      spec.factors.push_back({"zero", 0.0});
    }
    picked.push_back(spec);
  }
  config.checks = std::move(picked);

  const auto cells = wvc::enumerate_cells(config);
  const auto results = wvc::run_cells(cells, config);
  const std::string csv = wvc::render_csv_report(cells, results);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
    print_summary(tally(results), cells.size());
  }
  return status_from(tally(results));
}

int run_sweep_command(const std::string& config_path,
                      const std::string& out_dir) {
  wvc::SweepConfig config = config_path.empty()
                                ? wvc::builtin_smoke_config()
                                : wvc::load_sweep_config(config_path);
  const auto cells = wvc::enumerate_cells(config);
  const auto results = wvc::run_cells(cells, config);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/report.csv", wvc::render_csv_report(cells, results));
  write_file(out_dir + "/report.json",
             wvc::render_json_report(cells, results));
  const OutcomeCounts counts = tally(results);
  print_summary(counts, cells.size());
  std::cout << "reports: " << out_dir << "/report.csv, " << out_dir
            << "/report.json\n";
  return status_from(counts);
}

std::map<std::string, double> parse_params(
    const std::vector<std::string>& kvs) {
  std::map<std::string, double> params;
  for (const std::string& kv : kvs) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw wvc::ConfigError("--param expects key=value, got \"" + kv + "\"");
    }
    try {
      size_t used = 0;
      const double v = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      params[kv.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw wvc::ConfigError("--param expects a numeric value, got \"" + kv +
                             "\"");
    }
  }
  return params;
}

int run_profile_command(const std::string& entry, const std::string& quantity,
                        const std::vector<std::string>& param_kvs,
                        double lambda, double a, double radius,
                        int grid_points, const std::string& out_path) {
  static const std::vector<std::string> quantities = {
      "psi",       "h",     "h_f",   "mu_rad", "mu_tan",
      "ric_minus", "rho_a", "ratio", "alpha"};
  if (std::find(quantities.begin(), quantities.end(), quantity) ==
      quantities.end()) {
    std::string expected;
    for (const auto& q : quantities) expected += (expected.empty() ? "" : ", ") + q;
    throw wvc::ConfigError("unknown quantity \"" + quantity +
                           "\"; expected one of " + expected);
  }

  const wvc::RadialManifold m =
      wvc::make_manifold(entry, parse_params(param_kvs));
  const wvc::ModelSpace model(m.dimension(), lambda);

  double hi = radius;
  if (!(hi > 0.0)) {
    hi = m.r_max();
    const bool model_capped =
        quantity == "psi" || quantity == "ratio" || quantity == "alpha";
    if (model_capped && lambda > 0.0) {
      hi = std::min(hi, model.comparison_limit());
    }
  }
  const std::vector<double> grid = wvc::radial_grid(hi, grid_points);

  std::ostringstream out;
  for (double r : grid) {
    double value = 0.0;
    if (quantity == "psi") {
      value = m.psi(lambda, a, r);
    } else if (quantity == "h") {
      value = m.mean_curvature(r);
    } else if (quantity == "h_f") {
      value = m.weighted_mean_curvature(r);
    } else if (quantity == "mu_rad") {
      value = m.ricci_f_eigenvalues(r).radial;
    } else if (quantity == "mu_tan") {
      value = m.ricci_f_eigenvalues(r).tangential;
    } else if (quantity == "ric_minus") {
      value = m.ric_f_lambda_minus(lambda, r);
    } else if (quantity == "rho_a") {
      value = m.rho_a(a, r);
    } else if (quantity == "ratio") {
      value = wvc::weighted_ball_volume(m, r, {}) /
              wvc::weighted_ball_volume_model(model, a, r, {});
    } else {
      value = wvc::alpha(model, r);
    }
    out << wvc::format_float(r) << ' ' << wvc::format_float(value) << '\n';
  }
  write_file(out_path, out.str());
  return 0;
}

int run_constants_command(int n, double p, double q, double kappa, double l,
                          double lambda, double a, double radius) {
  const wvc::ExplicitConstants ec =
      wvc::explicit_constants(n, p, q, kappa, l, lambda, a, radius);
  std::ostringstream out;
  out << "n = " << ec.n << '\n';
  out << "p = " << wvc::format_float(ec.p) << '\n';
  out << "q = " << wvc::format_float(ec.q) << '\n';
  out << "kappa = " << wvc::format_float(ec.kappa) << '\n';
  out << "l = " << wvc::format_float(ec.l) << '\n';
  out << "lambda = " << wvc::format_float(ec.lambda) << '\n';
  out << "a = " << wvc::format_float(ec.a) << '\n';
  out << "R = " << wvc::format_float(ec.R) << '\n';
  out << "D = " << wvc::format_float(ec.D) << '\n';
  out << "s = " << wvc::format_float(ec.s) << '\n';
  out << "ray_c1 = " << wvc::format_float(ec.ray_c1) << '\n';
  out << "ray_c2 = " << wvc::format_float(ec.ray_c2) << '\n';
  out << "ray_c3 = " << wvc::format_float(ec.ray_c3) << '\n';
  out << "dyadic_c = " << wvc::format_float(ec.dyadic_c) << '\n';
  out << "sn_ratio_max = " << wvc::format_float(ec.sn_ratio_max) << '\n';
  out << "model_volume_ratio = " << wvc::format_float(ec.model_volume_ratio)
      << '\n';
  out << "psi_norm_c = " << wvc::format_float(ec.psi_norm_c) << '\n';
  out << "ratio_slope_c = " << wvc::format_float(ec.ratio_slope_c) << '\n';
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted warped-product volume comparison checker"};
  app.require_subcommand(1);

  auto* check_cmd =
      app.add_subcommand("check", "Run one named check across manifolds");
  std::string check_name, check_config, check_out;
  check_cmd->add_option("name", check_name, "Check name")->required();
  check_cmd->add_option("--config", check_config, "Sweep config JSON");
  check_cmd->add_option("--out", check_out, "Write the CSV report here");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Run every configured check cell");
  std::string sweep_config, sweep_out;
  sweep_cmd->add_option("--config", sweep_config,
                        "Sweep config JSON (omit for the built-in smoke run)");
  sweep_cmd->add_option("--out", sweep_out, "Report directory")->required();

  auto* profile_cmd = app.add_subcommand(
      "profile", "Tabulate a radial quantity on a catalog manifold");
  std::string profile_entry, profile_quantity, profile_out;
  std::vector<std::string> profile_params;
  double profile_lambda = 0.0, profile_a = 0.0, profile_radius = 0.0;
  int profile_points = 256;
  profile_cmd->add_option("manifold", profile_entry, "Catalog entry")
      ->required();
  profile_cmd
      ->add_option("quantity", profile_quantity,
                   "psi|h|h_f|mu_rad|mu_tan|ric_minus|rho_a|ratio|alpha")
      ->required();
  profile_cmd->add_option("--param", profile_params,
                          "Catalog parameter key=value (repeatable)");
  profile_cmd->add_option("--lambda", profile_lambda, "Model curvature");
  profile_cmd->add_option("--a", profile_a, "Gradient allowance");
  profile_cmd->add_option("--R", profile_radius,
                          "Top radius (default: the manifold domain)");
  profile_cmd->add_option("--grid-points", profile_points, "Grid size");
  profile_cmd->add_option("--out", profile_out, "Output table path")
      ->required();

  auto* constants_cmd = app.add_subcommand(
      "constants", "Print the explicit constants for one parameter set");
  int cn = 0;
  double cp = 0, cq = 0, cl = 0, clambda = 0.0, ca = 0.0, cR = 0,
         ckappa = 1.0;
  constants_cmd->add_option("--n", cn, "Dimension")->required();
  constants_cmd->add_option("--p", cp, "Curvature norm exponent")->required();
  constants_cmd->add_option("--q", cq, "Gradient norm exponent")->required();
  constants_cmd->add_option("--l", cl, "Volume growth exponent")->required();
  constants_cmd->add_option("--lambda", clambda, "Model curvature");
  constants_cmd->add_option("--a", ca, "Gradient allowance");
  constants_cmd->add_option("--R", cR, "Ball radius")->required();
  constants_cmd->add_option("--kappa", ckappa, "Volume growth constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check_cmd->parsed()) {
      return run_check_command(check_name, check_config, check_out);
    }
    if (sweep_cmd->parsed()) {
      return run_sweep_command(sweep_config, sweep_out);
    }
    if (profile_cmd->parsed()) {
      return run_profile_command(profile_entry, profile_quantity,
                                 profile_params, profile_lambda, profile_a,
                                 profile_radius, profile_points, profile_out);
    }
    return run_constants_command(cn, cp, cq, ckappa, cl, clambda, ca, cR);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
