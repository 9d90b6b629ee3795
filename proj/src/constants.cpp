#include "wvc/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wvc/model_space.hpp"

namespace wvc {

ExplicitConstants explicit_constants(int n, double p, double q, double kappa,
                                     double l, double lambda, double a,
                                     double R) {
  if (n < 2) {
    throw std::invalid_argument("explicit_constants: requires n >= 2");
  }
  if (!(p > n / 2.0)) {
    throw std::invalid_argument("explicit_constants: requires p > n/2");
  }
  if (!(p < l)) {
    throw std::invalid_argument("explicit_constants: requires p < l");
  }
  if (!(l <= n)) {
    throw std::invalid_argument("explicit_constants: requires l <= n");
  }
  if (!(q > p * l / (l - p))) {
    throw std::invalid_argument("explicit_constants: requires q > p l/(l - p)");
  }
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("explicit_constants: requires kappa > 0");
  }
  if (!(a >= 0.0)) {
    throw std::invalid_argument("explicit_constants: requires a >= 0");
  }
  if (!(R > 0.0)) {
    throw std::invalid_argument("explicit_constants: requires R > 0");
  }
  if (lambda > 0.0 && !(R <= std::numbers::pi / (2.0 * std::sqrt(lambda)))) {
    throw std::invalid_argument(
        "explicit_constants: requires R <= pi/(2 sqrt(lambda))");
  }

  ExplicitConstants c;
  c.n = n;
  c.p = p;
  c.q = q;
  c.kappa = kappa;
  c.l = l;
  c.lambda = lambda;
  c.a = a;
  c.R = R;

  c.D = (2.0 * p - n) / ((n - 1.0) * (2.0 * p - 1.0));
  c.s = p * q / (q - p);

  const double three = std::pow(3.0, 2.0 * p - 1.0);
  c.ray_c1 = three * std::pow(2.0 / c.D, p);
  c.ray_c2 = three * std::pow(2.0 / ((n - 1.0) * c.D), 2.0 * p);
  c.ray_c3 = three * std::pow(1.0 / c.D, p);

  c.dyadic_c = std::pow(
      kappa * std::pow(2.0, c.s) / (1.0 - std::pow(2.0, -(l - c.s))),
      1.0 / (2.0 * c.s));

  const ModelSpace model(n, lambda);
  c.sn_ratio_max = max_t_snprime_over_sn(model, R);
  c.model_volume_ratio = model_volume_ratio_bound(model);

  const double inv2p = 1.0 / (2.0 * p);
  const double gradient_mixed = std::pow(c.ray_c1, inv2p) *
                                std::sqrt(c.sn_ratio_max) * c.dyadic_c *
                                std::pow(R, (l - c.s) / (2.0 * c.s));
  const double gradient_plain = std::pow(c.ray_c2, inv2p) *
                                std::pow(kappa, inv2p - 1.0 / q) *
                                std::pow(R, l * inv2p - l / q);
  const double curvature = std::pow(c.ray_c3, inv2p);
  c.psi_norm_c = std::max({gradient_mixed, gradient_plain, curvature});

  c.ratio_slope_c = inv2p * std::pow(c.model_volume_ratio, inv2p) *
                    std::exp(a * R * (1.0 + inv2p));
  return c;
}

double curvature_only_psi_coefficient(int n, double p) {
  if (n < 2) {
    throw std::invalid_argument(
        "curvature_only_psi_coefficient: requires n >= 2");
  }
  if (!(p > n / 2.0)) {
    throw std::invalid_argument(
        "curvature_only_psi_coefficient: requires p > n/2");
  }
  const double D = (2.0 * p - n) / ((n - 1.0) * (2.0 * p - 1.0));
  return std::sqrt(1.0 / D);
}

double comparison_constant(const ExplicitConstants& c, double r) {
  if (!(r > 0.0 && r <= c.R)) {
    throw std::invalid_argument("comparison_constant: requires 0 < r <= R");
  }
  const double e = 1.0 - c.n / (2.0 * c.p);
  return c.psi_norm_c * c.ratio_slope_c *
         (std::pow(c.R, e) - std::pow(r, e)) / e;
}

}  // namespace wvc
