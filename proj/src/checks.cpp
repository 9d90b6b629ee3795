#include "wvc/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "wvc/format.hpp"
#include "wvc/model_space.hpp"

namespace wvc {

namespace {

bool plain_pass(double lhs, double rhs, const Tolerances& tol) {
  return lhs <= rhs + tol.abs_tol + tol.rel_tol * std::abs(rhs);
}

bool fd_pass(double lhs, double rhs, const Tolerances& tol, double fd_error) {
  return lhs <= rhs + tol.abs_tol + tol.rel_tol * std::abs(rhs) +
                    tol.fd_rel * std::max(std::abs(lhs), std::abs(rhs)) +
                    fd_error;
}

int pointwise_grid_count(const CheckConfig& cfg, double hi) {
  const long raw = std::lround(cfg.grid_per_unit * hi);
  return static_cast<int>(
      std::clamp<long>(raw, 64, cfg.max_grid_points));
}

CheckReport make_report(const char* name, const RadialManifold& m,
                        const CheckConfig& cfg) {
  CheckReport rep;
  rep.check_name = name;
  rep.manifold = m.name();
  rep.parameters["n"] = m.dimension();
  rep.resolution.abs_tol = cfg.tol.abs_tol;
  rep.resolution.rel_tol = cfg.tol.rel_tol;
  return rep;
}

struct RatioEval {
  double value = 0.0;
  double error = 0.0;
};

// vol_f B(t) / v_a(t); the sphere-area factor cancels between the two
// integrals, so both are taken per unit solid angle.
RatioEval volume_ratio(const RadialManifold& m, const ModelSpace& model,
                       double a, double t, const QuadratureOptions& opt) {
  const QuadratureResult num =
      integrate([&m](double u) { return m.volume_element(u); }, 0.0, t, opt);
  const QuadratureResult den = integrate(
      [&model, a](double u) { return std::exp(a * u) * omega_model(model, u); },
      0.0, t, opt);
  RatioEval out;
  out.value = num.value / den.value;
  out.error =
      (num.error_estimate + std::abs(out.value) * den.error_estimate) /
      den.value;
  return out;
}

// Finite difference of transform(vol_f B / v_a) at R, with the evaluation
// noise of the stencil points propagated into *fd_error. transform_value
// maps the raw ratio, transform_error its quadrature error.
template <typename Value, typename Error>
double ratio_slope_fd(const RadialManifold& m, const ModelSpace& model,
                      double a, double R, const QuadratureOptions& opt,
                      Value&& transform_value, Error&& transform_error,
                      double* fd_error) {
  const double h = std::max(1e-4, 1e-3 * R);
  if (!(R - h > 0.0)) {
    throw std::invalid_argument("ratio slope: requires R > h");
  }
  if (!(R + h <= m.r_max())) {
    throw std::invalid_argument("ratio slope: requires R + h <= r_max");
  }
  if (model.curvature() > 0.0 && !(R + h <= model.comparison_limit())) {
    throw std::invalid_argument(
        "ratio slope: requires R + h <= pi/(2 sqrt(lambda))");
  }

  std::map<double, double> cache;
  double noise = 0.0;
  auto eval = [&](double t) {
    const auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    const RatioEval raw = volume_ratio(m, model, a, t, opt);
    noise = std::max(noise, transform_error(raw));
    const double v = transform_value(raw.value);
    cache.emplace(t, v);
    return v;
  };
  // Populate the stencil first so the noise figure is complete before the
  // difference formula consumes it.
  eval(R + h);
  eval(R - h);
  eval(R + h / 2);
  eval(R - h / 2);
  return finite_difference(eval, R, h, fd_error, noise);
}

double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const size_t k = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < k; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = 0; i < k; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

void require_ball_radii(const RadialManifold& m, double r, double R,
                        const char* where) {
  if (!(r > 0.0 && r <= R && R <= m.r_max())) {
    throw std::invalid_argument(std::string(where) +
                                ": requires 0 < r <= R <= r_max");
  }
}

double sup_abs_weight_slope(const RadialManifold& m, const CheckConfig& cfg) {
  const int count = pointwise_grid_count(cfg, m.r_max());
  double sup = std::abs(m.f_d1(0.0));
  for (int i = 0; i < count; ++i) {
    const double r = m.r_max() * (i + 1) / count;
    sup = std::max(sup, std::abs(m.f_d1(r)));
  }
  return sup;
}

}  // namespace

CheckReport check_riccati(const RadialManifold& m, double lambda, double a,
                          std::span<const double> grid,
                          const CheckConfig& cfg) {
  const int n = m.dimension();
  const ModelSpace model(n, lambda);
  CheckReport rep = make_report("riccati", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["a"] = a;
  rep.resolution.grid_points = static_cast<long>(grid.size());

  long active = 0;
  bool all_pass = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_lhs = 0.0, worst_rhs = 0.0, worst_r = 0.0;
  for (const double r : grid) {
    const double psi = m.psi(lambda, a, r);
    if (psi <= cfg.psi_active_eps) continue;
    ++active;
    const double snq = sn_prime(model, r) / sn(model, r);
    const double rho = m.rho_a(a, r);
    const double lhs = m.psi_prime(lambda, a, r) + psi * psi / (n - 1);
    const double rhs = -2.0 * snq * psi + 2.0 / (n - 1) * rho * psi +
                       2.0 * snq * rho + m.ric_f_lambda_minus(lambda, r);
    const double margin = rhs - lhs;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_lhs = lhs;
      worst_rhs = rhs;
      worst_r = r;
    }
    if (!plain_pass(lhs, rhs, cfg.tol)) all_pass = false;
  }

  if (active == 0) {
    rep.pass = true;
    if (!grid.empty()) {
      rep.worst_lo = grid.front();
      rep.worst_hi = grid.back();
    }
    rep.resolution.notes = "vacuous: psi below threshold at every grid point";
    return rep;
  }
  rep.lhs = worst_lhs;
  rep.rhs = worst_rhs;
  rep.margin = worst_margin;
  rep.worst_lo = rep.worst_hi = worst_r;
  rep.pass = all_pass;
  rep.resolution.notes = "active points: " + std::to_string(active) + " of " +
                         std::to_string(grid.size());
  return rep;
}

CheckReport check_integral_estimate(const RadialManifold& m, double lambda,
                                    double a, double p, double R,
                                    const CheckConfig& cfg) {
  const int n = m.dimension();
  if (!(p > n / 2.0)) {
    throw std::invalid_argument("check_integral_estimate: requires p > n/2");
  }
  if (!(p < n)) {
    throw std::invalid_argument("check_integral_estimate: requires p < n");
  }
  if (!(a >= 0.0)) {
    throw std::invalid_argument("check_integral_estimate: requires a >= 0");
  }
  if (!(R > 0.0 && R <= m.r_max())) {
    throw std::invalid_argument(
        "check_integral_estimate: requires 0 < R <= r_max");
  }
  const ModelSpace model(n, lambda);
  if (lambda > 0.0 && !(R <= model.comparison_limit())) {
    throw std::invalid_argument(
        "check_integral_estimate: requires R <= pi/(2 sqrt(lambda))");
  }

  const double D = (2.0 * p - n) / ((n - 1.0) * (2.0 * p - 1.0));
  const double three = std::pow(3.0, 2.0 * p - 1.0);
  const double c1 = three * std::pow(2.0 / D, p);
  const double c2 = three * std::pow(2.0 / ((n - 1.0) * D), 2.0 * p);
  const double c3 = three * std::pow(1.0 / D, p);
  const double msn = max_t_snprime_over_sn(model, R);

  const auto weight = [&m, a](double r) {
    return std::exp(-a * r) * m.volume_element(r);
  };
  QuadratureOptions opt = cfg.check_quad;
  const QuadratureResult lhs_q = integrate(
      [&](double r) {
        return std::pow(m.psi(lambda, a, r), 2.0 * p) * weight(r);
      },
      0.0, R, opt);
  QuadratureOptions mixed_opt = opt;
  mixed_opt.singular_exponent = std::min(0.0, (n - 1.0) - p);
  const QuadratureResult mixed_q = integrate(
      [&](double r) { return std::pow(m.rho_a(a, r) / r, p) * weight(r); },
      0.0, R, mixed_opt);
  const QuadratureResult rho_q = integrate(
      [&](double r) { return std::pow(m.rho_a(a, r), 2.0 * p) * weight(r); },
      0.0, R, opt);
  const QuadratureResult ric_q = integrate(
      [&](double r) {
        return std::pow(m.ric_f_lambda_minus(lambda, r), p) * weight(r);
      },
      0.0, R, opt);

  CheckReport rep = make_report("integral_estimate", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["a"] = a;
  rep.parameters["p"] = p;
  rep.parameters["R"] = R;
  rep.lhs = lhs_q.value;
  rep.rhs = c1 * std::pow(msn, p) * mixed_q.value + c2 * rho_q.value +
            c3 * ric_q.value;
  rep.margin = rep.rhs - rep.lhs;
  rep.worst_lo = 0.0;
  rep.worst_hi = R;
  rep.pass = plain_pass(rep.lhs, rep.rhs, cfg.tol);
  rep.resolution.quad_error =
      lhs_q.error_estimate + c1 * std::pow(msn, p) * mixed_q.error_estimate +
      c2 * rho_q.error_estimate + c3 * ric_q.error_estimate;
  return rep;
}

CheckReport check_dyadic_bound(const RadialManifold& m, double a, double p,
                               double q, double l, double R,
                               std::optional<double> kappa,
                               const CheckConfig& cfg) {
  if (!(p > 0.0)) {
    throw std::invalid_argument("check_dyadic_bound: requires p > 0");
  }
  if (!(p < l)) {
    throw std::invalid_argument("check_dyadic_bound: requires p < l");
  }
  if (!(q > p * l / (l - p))) {
    throw std::invalid_argument(
        "check_dyadic_bound: requires q > p l/(l - p)");
  }
  if (!(a >= 0.0)) {
    throw std::invalid_argument("check_dyadic_bound: requires a >= 0");
  }
  if (!(R > 0.0 && R <= m.r_max())) {
    throw std::invalid_argument("check_dyadic_bound: requires 0 < R <= r_max");
  }

  const double s = p * q / (q - p);
  const double kap =
      kappa ? *kappa : kappa_for_growth(m, l, R, 512, cfg.volume_quad);
  const double geometric = 1.0 - std::pow(2.0, -(l - s));

  const double shell = ball_integral(
      m, R, [a, s](double r) { return std::exp(-a * r) * std::pow(r, -s); },
      cfg.check_quad, -s);
  const double shell_bound = kap * std::pow(2.0, s) * std::pow(R, l - s) /
                             geometric;

  const double lhs_integral = ball_integral(
      m, R,
      [&m, a, p](double r) {
        return std::pow(m.rho_a(a, r), p) * std::exp(-a * r) *
               std::pow(r, -p);
      },
      cfg.check_quad, -p);
  const double lhs = std::pow(lhs_integral, 1.0 / (2.0 * p));

  const double rho_norm = weighted_lp_norm(
      m, [&m, a](double r) { return m.rho_a(a, r); }, NormSpec{q, a, R},
      cfg.check_quad);
  const double dyadic_c =
      std::pow(kap * std::pow(2.0, s) / geometric, 1.0 / (2.0 * s));
  const double rhs = dyadic_c *
                     std::pow(R, l / (2.0 * p) - l / (2.0 * q) - 0.5) *
                     std::sqrt(rho_norm);

  CheckReport rep = make_report("dyadic_bound", m, cfg);
  rep.parameters["a"] = a;
  rep.parameters["p"] = p;
  rep.parameters["q"] = q;
  rep.parameters["l"] = l;
  rep.parameters["R"] = R;
  rep.parameters["kappa"] = kap;
  rep.parameters["s"] = s;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.worst_lo = 0.0;
  rep.worst_hi = R;
  const bool shell_ok = plain_pass(shell, shell_bound, cfg.tol);
  rep.pass = shell_ok && plain_pass(lhs, rhs, cfg.tol);
  rep.resolution.notes = "shell integral " + format_float(shell) +
                         " vs bound " + format_float(shell_bound) +
                         (shell_ok ? "" : " (VIOLATED)");
  return rep;
}

CheckReport check_psi_lp(const RadialManifold& m, double lambda, double a,
                         double p, double q, double l, double R,
                         std::optional<double> kappa, const CheckConfig& cfg) {
  const int n = m.dimension();
  const double kap =
      kappa ? *kappa : kappa_for_growth(m, l, R, 512, cfg.volume_quad);
  const ExplicitConstants ec =
      explicit_constants(n, p, q, kap, l, lambda, a, R);
  if (!(R <= m.r_max())) {
    throw std::invalid_argument("check_psi_lp: requires R <= r_max");
  }

  const double lhs = weighted_lp_norm(
      m, [&m, lambda, a](double r) { return m.psi(lambda, a, r); },
      NormSpec{2.0 * p, a, R}, cfg.check_quad);
  const double ric_norm = weighted_lp_norm(
      m, [&m, lambda](double r) { return m.ric_f_lambda_minus(lambda, r); },
      NormSpec{p, a, R}, cfg.check_quad);
  const double rho_norm = weighted_lp_norm(
      m, [&m, a](double r) { return m.rho_a(a, r); }, NormSpec{q, a, R},
      cfg.check_quad);
  const double rhs =
      ec.psi_norm_c * (std::sqrt(ric_norm) + std::sqrt(rho_norm) + rho_norm);

  // The constant itself must be non-decreasing in the ball radius.
  bool monotone = true;
  double prev = 0.0;
  for (int i = 1; i <= 4; ++i) {
    const double c =
        explicit_constants(n, p, q, kap, l, lambda, a, R * i / 4.0)
            .psi_norm_c;
    if (c < prev - cfg.tol.monotone_tol) monotone = false;
    prev = c;
  }

  CheckReport rep = make_report("psi_lp", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["a"] = a;
  rep.parameters["p"] = p;
  rep.parameters["q"] = q;
  rep.parameters["l"] = l;
  rep.parameters["R"] = R;
  rep.parameters["kappa"] = kap;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.worst_lo = 0.0;
  rep.worst_hi = R;
  rep.pass = plain_pass(lhs, rhs, cfg.tol) && monotone;
  rep.resolution.notes =
      std::string("norm coefficient ") + format_float(ec.psi_norm_c) +
      (monotone ? ", non-decreasing in R" : ", NOT monotone in R");
  return rep;
}

CheckReport check_ratio_derivative(const RadialManifold& m, double lambda,
                                   double a, double R,
                                   const CheckConfig& cfg) {
  const int n = m.dimension();
  if (!(a >= 0.0)) {
    throw std::invalid_argument("check_ratio_derivative: requires a >= 0");
  }
  const ModelSpace model(n, lambda);

  QuadratureOptions vq = cfg.volume_quad;
  vq.rel_tol = std::min(vq.rel_tol, 1e-11);
  double fd_error = 0.0;
  const double lhs = ratio_slope_fd(
      m, model, a, R, vq, [](double v) { return v; },
      [](const RatioEval& e) { return e.error; }, &fd_error);

  const double area = unit_sphere_area(n);
  const double va = weighted_ball_volume_model(model, a, R, cfg.volume_quad);
  const double alpha_sup = alpha_max(model, R);
  const double psi_mass = ball_integral(
      m, R, [&m, lambda, a](double r) { return m.psi(lambda, a, r); },
      cfg.check_quad);
  const double rhs = std::exp(a * R) * omega_model(model, R) * area /
                     (va * va) * alpha_sup * psi_mass;

  CheckReport rep = make_report("ratio_derivative", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["a"] = a;
  rep.parameters["R"] = R;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.worst_lo = rep.worst_hi = R;
  rep.pass = fd_pass(lhs, rhs, cfg.tol, fd_error);
  rep.resolution.fd_error = fd_error;
  return rep;
}

CheckReport check_ratio_derivative_reduced(const RadialManifold& m,
                                           double lambda, double a, double p,
                                           double R, const CheckConfig& cfg) {
  const int n = m.dimension();
  if (!(p >= 0.5)) {
    throw std::invalid_argument(
        "check_ratio_derivative_reduced: requires p >= 1/2");
  }
  if (!(a >= 0.0)) {
    throw std::invalid_argument(
        "check_ratio_derivative_reduced: requires a >= 0");
  }
  const ModelSpace model(n, lambda);
  const double inv2p = 1.0 / (2.0 * p);

  QuadratureOptions vq = cfg.volume_quad;
  vq.rel_tol = std::min(vq.rel_tol, 1e-11);
  double fd_error = 0.0;
  const double lhs = ratio_slope_fd(
      m, model, a, R, vq,
      [inv2p](double v) { return std::pow(v, inv2p); },
      [inv2p](const RatioEval& e) {
        return inv2p * std::pow(e.value, inv2p - 1.0) * e.error;
      },
      &fd_error);

  const double slope_c = inv2p *
                         std::pow(model_volume_ratio_bound(model), inv2p) *
                         std::exp(a * R * (1.0 + inv2p));
  const double psi_norm = weighted_lp_norm(
      m, [&m, lambda, a](double r) { return m.psi(lambda, a, r); },
      NormSpec{2.0 * p, a, R}, cfg.check_quad);
  const double rhs = slope_c * std::pow(R, -n * inv2p) * psi_norm;

  CheckReport rep = make_report("ratio_derivative_reduced", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["a"] = a;
  rep.parameters["p"] = p;
  rep.parameters["R"] = R;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.worst_lo = rep.worst_hi = R;
  rep.pass = fd_pass(lhs, rhs, cfg.tol, fd_error);
  rep.resolution.fd_error = fd_error;
  return rep;
}

CheckReport check_main_theorem(const RadialManifold& m, double lambda,
                               double a, double p, double q, double l,
                               double r, double R, double R0,
                               const CheckConfig& cfg) {
  const int n = m.dimension();
  require_ball_radii(m, r, R, "check_main_theorem");
  if (!(R <= R0 && R0 <= m.r_max())) {
    throw std::invalid_argument(
        "check_main_theorem: requires R <= R0 <= r_max");
  }
  // The growth hypothesis is verified, never assumed.
  const double kap = kappa_for_growth(m, l, R0, 512, cfg.volume_quad);
  const ExplicitConstants ec =
      explicit_constants(n, p, q, kap, l, lambda, a, R);
  const double constant = comparison_constant(ec, r);

  const ModelSpace model(n, lambda);
  const double inv2p = 1.0 / (2.0 * p);
  const double ratio_hi = volume_ratio(m, model, a, R, cfg.volume_quad).value;
  const double ratio_lo = volume_ratio(m, model, a, r, cfg.volume_quad).value;
  const double lhs = std::pow(ratio_hi, inv2p) - std::pow(ratio_lo, inv2p);

  const double ric_norm = weighted_lp_norm(
      m, [&m, lambda](double u) { return m.ric_f_lambda_minus(lambda, u); },
      NormSpec{p, a, R}, cfg.check_quad);
  const double rho_norm = weighted_lp_norm(
      m, [&m, a](double u) { return m.rho_a(a, u); }, NormSpec{q, a, R},
      cfg.check_quad);
  const double rhs =
      constant * (std::sqrt(ric_norm) + std::sqrt(rho_norm) + rho_norm);

  // Small-R probe: comparison_constant/R^e (in its r -> 0 form) must stay
  // bounded by its top-radius value as R shrinks; e = 1 - n/(2p).
  const double e = 1.0 - n * inv2p;
  double probe_top = 0.0;
  bool probe_ok = true;
  double probe_min = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 5; ++j) {
    const double Rj = R / std::pow(2.0, j);
    const ExplicitConstants cj =
        explicit_constants(n, p, q, kap, l, lambda, a, Rj);
    const double scaled = cj.psi_norm_c * cj.ratio_slope_c / e;
    if (j == 0) {
      probe_top = scaled;
    } else if (scaled > probe_top * (1.0 + 1e-9)) {
      probe_ok = false;
    }
    probe_min = std::min(probe_min, scaled);
  }

  CheckReport rep = make_report("main_theorem", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["a"] = a;
  rep.parameters["p"] = p;
  rep.parameters["q"] = q;
  rep.parameters["l"] = l;
  rep.parameters["r"] = r;
  rep.parameters["R"] = R;
  rep.parameters["R0"] = R0;
  rep.parameters["kappa"] = kap;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.worst_lo = r;
  rep.worst_hi = R;
  rep.pass = plain_pass(lhs, rhs, cfg.tol) && probe_ok;
  rep.resolution.notes =
      "constant " + format_float(constant) + "; scaled-constant probe [" +
      format_float(probe_min) + ", " + format_float(probe_top) + "]" +
      (probe_ok ? "" : " UNBOUNDED");
  return rep;
}

CheckReport check_petersen_wei(const RadialManifold& m, double lambda,
                               double p, double r, double R,
                               const CheckConfig& cfg) {
  const int n = m.dimension();
  {
    const int count = pointwise_grid_count(cfg, m.r_max());
    for (int i = 0; i <= count; ++i) {
      const double t = m.r_max() * i / count;
      if (std::abs(m.f(t)) > 1e-12 || std::abs(m.f_d1(t)) > 1e-12) {
        throw std::invalid_argument("check_petersen_wei: requires f = 0");
      }
    }
  }
  if (!(lambda <= 0.0)) {
    throw std::invalid_argument("check_petersen_wei: requires lambda <= 0");
  }
  if (!(p > n / 2.0)) {
    throw std::invalid_argument("check_petersen_wei: requires p > n/2");
  }
  require_ball_radii(m, r, R, "check_petersen_wei");

  const ModelSpace model(n, lambda);
  const double inv2p = 1.0 / (2.0 * p);
  const double e = 1.0 - n * inv2p;
  const double coef = curvature_only_psi_coefficient(n, p);
  const double slope_c =
      inv2p * std::pow(model_volume_ratio_bound(model), inv2p);
  const double constant =
      coef * slope_c * (std::pow(R, e) - std::pow(r, e)) / e;

  const double ratio_hi =
      volume_ratio(m, model, 0.0, R, cfg.volume_quad).value;
  const double ratio_lo =
      volume_ratio(m, model, 0.0, r, cfg.volume_quad).value;
  const double lhs = std::pow(ratio_hi, inv2p) - std::pow(ratio_lo, inv2p);
  const double ric_norm = weighted_lp_norm(
      m, [&m, lambda](double u) { return m.ric_f_lambda_minus(lambda, u); },
      NormSpec{p, 0.0, R}, cfg.check_quad);
  const double rhs = constant * std::sqrt(ric_norm);

  // Small-R scaling of the constant: log-log slope over one decade should
  // match e = 1 - n/(2p).
  std::vector<double> logs_r, logs_c;
  for (int j = 0; j <= 8; ++j) {
    const double Rj = R * std::pow(10.0, -j / 8.0);
    logs_r.push_back(std::log(Rj));
    logs_c.push_back(std::log(coef * slope_c * std::pow(Rj, e) / e));
  }
  const double slope = least_squares_slope(logs_r, logs_c);
  const bool slope_ok = std::abs(slope - e) <= 0.1;

  CheckReport rep = make_report("petersen_wei", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["p"] = p;
  rep.parameters["r"] = r;
  rep.parameters["R"] = R;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.worst_lo = r;
  rep.worst_hi = R;
  rep.pass = plain_pass(lhs, rhs, cfg.tol) && slope_ok;
  rep.resolution.notes = "small-R constant slope " + format_float(slope) +
                         " vs exponent " + format_float(e) +
                         (slope_ok ? "" : " MISMATCH");
  return rep;
}

CheckReport check_bounded_gradient_remark(const RadialManifold& m,
                                          double lambda, double a, double p,
                                          double r, double R,
                                          const CheckConfig& cfg) {
  const int n = m.dimension();
  if (!(a >= 0.0)) {
    throw std::invalid_argument(
        "check_bounded_gradient_remark: requires a >= 0");
  }
  const double sup_slope = sup_abs_weight_slope(m, cfg);
  if (!(sup_slope <= a)) {
    throw std::invalid_argument(
        "check_bounded_gradient_remark: requires sup|f'| <= a");
  }
  if (!(p > n / 2.0)) {
    throw std::invalid_argument(
        "check_bounded_gradient_remark: requires p > n/2");
  }
  require_ball_radii(m, r, R, "check_bounded_gradient_remark");
  const ModelSpace model(n, lambda);
  if (lambda > 0.0 && !(R <= model.comparison_limit())) {
    throw std::invalid_argument(
        "check_bounded_gradient_remark: requires R <= pi/(2 sqrt(lambda))");
  }

  const double inv2p = 1.0 / (2.0 * p);
  const double e = 1.0 - n * inv2p;
  const double coef = curvature_only_psi_coefficient(n, p);
  const double slope_c = inv2p *
                         std::pow(model_volume_ratio_bound(model), inv2p) *
                         std::exp(a * R * (1.0 + inv2p));
  const double constant =
      coef * slope_c * (std::pow(R, e) - std::pow(r, e)) / e;

  const double ratio_hi = volume_ratio(m, model, a, R, cfg.volume_quad).value;
  const double ratio_lo = volume_ratio(m, model, a, r, cfg.volume_quad).value;
  const double lhs = std::pow(ratio_hi, inv2p) - std::pow(ratio_lo, inv2p);
  const double ric_norm = weighted_lp_norm(
      m, [&m, lambda](double u) { return m.ric_f_lambda_minus(lambda, u); },
      NormSpec{p, a, R}, cfg.check_quad);
  const double rhs = constant * std::sqrt(ric_norm);

  CheckReport rep = make_report("bounded_gradient_remark", m, cfg);
  rep.parameters["lambda"] = lambda;
  rep.parameters["a"] = a;
  rep.parameters["p"] = p;
  rep.parameters["r"] = r;
  rep.parameters["R"] = R;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.worst_lo = r;
  rep.worst_hi = R;
  rep.pass = plain_pass(lhs, rhs, cfg.tol);
  rep.resolution.notes = "no growth constant consumed; sup|f'| = " +
                         format_float(sup_slope) + " <= a";
  return rep;
}

}  // namespace wvc
