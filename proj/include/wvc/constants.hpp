#pragma once

namespace wvc {

/**
 * Numeric constants for the comparison estimates, derived by tracking every
 * step of the proofs quantitatively. Notation:
 *
 *   D   = (2p - n)/((n-1)(2p-1)), the coefficient left in front of
 *         integral psi^{2p} after the integrated slope inequality; positive
 *         exactly when p > n/2.
 *   s   with 1/s = 1/p - 1/q, the exponent produced by splitting the mixed
 *         gradient term with Hoelder.
 *
 * Ray estimate (fixed direction, measure e^{-a r} omega_f dr):
 *   integral_0^R psi^{2p}
 *     <= ray_c1 * (max_{t<=R} t sn'/sn)^p * integral (rho_a/r)^p
 *      + ray_c2 * integral rho_a^{2p}
 *      + ray_c3 * integral (Ric_f^lambda,-)^p
 *   with ray_c1 = 3^{2p-1} (2/D)^p, ray_c2 = 3^{2p-1} (2/((n-1)D))^{2p},
 *   ray_c3 = 3^{2p-1} (1/D)^p.
 *
 * Dyadic shell bound, assuming vol_f B(r) <= kappa r^l on (0, R]:
 *   ( integral_{B(R)} rho_a^p r^{-p} e^{-a r} dvol_f )^{1/(2p)}
 *     <= dyadic_c * R^{l/(2p) - l/(2q) - 1/2} * ||rho_a||_{q,f,a}^{1/2},
 *   dyadic_c = ( kappa 2^s / (1 - 2^{-(l-s)}) )^{1/(2s)}.
 *
 * Norm estimate: ||psi||_{2p,f,a}(R) <= psi_norm_c * ( ||Ric_f^lambda,-
 * ||_{p,f,a}^{1/2} + ||rho_a||_{q,f,a}^{1/2} + ||rho_a||_{q,f,a} ), where
 * psi_norm_c is the largest of the three per-term coefficients; it is
 * non-decreasing in R.
 *
 * Ratio slope: d/dR (vol_f B(R)/v_a(R))^{1/(2p)}
 *     <= ratio_slope_c * R^{-n/(2p)} * ||psi||_{2p,f,a}(R),
 *   ratio_slope_c = (1/(2p)) * model_volume_ratio^{1/(2p)}
 *                   * e^{a R (1 + 1/(2p))},
 * with model_volume_ratio an upper bound on R^n / v(n, lambda, R).
 */
struct ExplicitConstants {
  // Inputs.
  int n = 0;
  double p = 0.0;
  double q = 0.0;
  double kappa = 0.0;
  double l = 0.0;
  double lambda = 0.0;
  double a = 0.0;
  double R = 0.0;

  // Derived values, in dependency order.
  double D = 0.0;
  double s = 0.0;
  double ray_c1 = 0.0;
  double ray_c2 = 0.0;
  double ray_c3 = 0.0;
  double dyadic_c = 0.0;
  double sn_ratio_max = 0.0;        // max_{t <= R} t sn'(t)/sn(t)
  double model_volume_ratio = 0.0;  // sup over admissible R of R^n/v
  double psi_norm_c = 0.0;
  double ratio_slope_c = 0.0;
};

/**
 * Validates the parameter range and fills in every derived constant.
 *
 * Requires n >= 2, n/2 < p < l <= n, q > p l/(l - p), kappa > 0, a >= 0,
 * 0 < R, and R <= pi/(2 sqrt(lambda)) when lambda > 0. Violations raise
 * std::invalid_argument naming the failed inequality.
 */
ExplicitConstants explicit_constants(int n, double p, double q, double kappa,
                                     double l, double lambda, double a,
                                     double R);

// Coefficient sqrt(1/D) of ||Ric_f^lambda,-||^{1/2} when rho_a vanishes
// identically; no kappa, q, or l enters. Requires p > n/2.
double curvature_only_psi_coefficient(int n, double p);

// Constant of the integrated comparison between radii r and R:
//   psi_norm_c * ratio_slope_c * (R^e - r^e)/e,  e = 1 - n/(2p) > 0.
// Requires 0 < r <= R.
double comparison_constant(const ExplicitConstants& c, double r);

}  // namespace wvc
