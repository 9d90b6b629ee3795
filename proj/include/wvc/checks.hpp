#pragma once

#include <optional>
#include <span>

#include "wvc/constants.hpp"
#include "wvc/norms.hpp"
#include "wvc/radial_manifold.hpp"
#include "wvc/report.hpp"

namespace wvc {

// Shared knobs for the inequality checkers. The two quadrature budgets
// follow the default tolerance policy: tight for volumes and norms, looser
// for the integrals that appear on both sides of a check.
struct CheckConfig {
  Tolerances tol;
  int grid_per_unit = 512;     // pointwise grid density per unit radius
  int max_grid_points = 4096;  // cap on pointwise grids for large domains
  QuadratureOptions volume_quad{};
  QuadratureOptions check_quad{1e-7, 400000, 0.0};
  double psi_active_eps = 1e-8;  // active-set threshold for slope checks
};

/**
 * Differential inequality for the excess mean curvature psi on the active
 * set {psi > eps}:
 *
 *   psi' + psi^2/(n-1) <= -2 (sn'/sn) psi + (2/(n-1)) rho_a psi
 *                         + 2 (sn'/sn) rho_a + Ric_f^lambda,-
 *
 * evaluated pointwise on the grid. Inactive points are skipped (psi is only
 * one-sidedly differentiable at the free boundary).
 */
CheckReport check_riccati(const RadialManifold& m, double lambda, double a,
                          std::span<const double> grid,
                          const CheckConfig& cfg = {});

/**
 * Along-ray integral estimate (measure e^{-a r} omega_f dr on (0, R]):
 *
 *   int psi^{2p} <= ray_c1 (max t sn'/sn)^p int (rho_a/r)^p
 *                 + ray_c2 int rho_a^{2p} + ray_c3 int (Ric_f^lambda,-)^p.
 *
 * Requires n/2 < p < n.
 */
CheckReport check_integral_estimate(const RadialManifold& m, double lambda,
                                    double a, double p, double R,
                                    const CheckConfig& cfg = {});

/**
 * Volume-growth consequence, in two layers: the shell bound
 *   int_{B(R)} e^{-a r} r^{-s} dvol_f <= kappa 2^s R^{l-s}/(1 - 2^{-(l-s)})
 * and the resulting estimate
 *   ( int_{B(R)} rho_a^p r^{-p} e^{-a r} dvol_f )^{1/(2p)}
 *       <= dyadic_c R^{l/(2p) - l/(2q) - 1/2} ||rho_a||_{q,f,a}^{1/2}.
 * Both must hold for the check to pass. kappa is computed from the manifold
 * when not supplied. Requires 0 < p < l and q > p l/(l - p).
 */
CheckReport check_dyadic_bound(const RadialManifold& m, double a, double p,
                               double q, double l, double R,
                               std::optional<double> kappa = std::nullopt,
                               const CheckConfig& cfg = {});

/**
 * Norm estimate for psi over the ball:
 *   ||psi||_{2p,f,a}(R) <= psi_norm_c ( ||Ric_f^lambda,-||_{p,f,a}^{1/2}
 *                          + ||rho_a||_{q,f,a}^{1/2} + ||rho_a||_{q,f,a} ).
 * Also probes that psi_norm_c is non-decreasing in R on a coarse grid.
 */
CheckReport check_psi_lp(const RadialManifold& m, double lambda, double a,
                         double p, double q, double l, double R,
                         std::optional<double> kappa = std::nullopt,
                         const CheckConfig& cfg = {});

/**
 * Derivative of the volume ratio against the model:
 *   d/dR ( vol_f B(R) / v_a(R) )
 *     <= e^{aR} omega_lambda(R) |S^{n-1}| / v_a(R)^2
 *        * (max_{s<=R} alpha(s)) * int_{B(R)} psi dvol_f.
 * LHS by finite differences of independently computed volumes.
 */
CheckReport check_ratio_derivative(const RadialManifold& m, double lambda,
                                   double a, double R,
                                   const CheckConfig& cfg = {});

/**
 * Same derivative after the 1/(2p) power:
 *   d/dR ( vol_f B(R)/v_a(R) )^{1/(2p)}
 *     <= ratio_slope_c * R^{-n/(2p)} * ||psi||_{2p,f,a}(R).
 * Requires p >= 1/2 (the proof's pairing exponent 2p must be >= 1).
 */
CheckReport check_ratio_derivative_reduced(const RadialManifold& m,
                                           double lambda, double a, double p,
                                           double R,
                                           const CheckConfig& cfg = {});

/**
 * Integrated comparison between radii r and R:
 *   (vol_f B(R)/v_a(R))^{1/(2p)} - (vol_f B(r)/v_a(r))^{1/(2p)}
 *     <= comparison_constant * ( ||Ric_f^lambda,-||_{p,f,a}^{1/2}(R)
 *        + ||rho_a||_{q,f,a}^{1/2}(R) + ||rho_a||_{q,f,a}(R) ).
 *
 * The growth constant kappa is always computed from the manifold on (0, R0]
 * so the volume-growth hypothesis is verified rather than assumed. The
 * report also carries a small-R probe of comparison_constant/R^{1-n/(2p)},
 * which must stay bounded by its value at the top radius.
 */
CheckReport check_main_theorem(const RadialManifold& m, double lambda,
                               double a, double p, double q, double l,
                               double r, double R, double R0,
                               const CheckConfig& cfg = {});

/**
 * Unweighted special case (f = 0, a = 0, lambda <= 0): the comparison with
 * the kappa-free constant sqrt(1/D), plus a log-log fit of the constant's
 * small-R scaling against the exponent 1 - n/(2p) over one decade.
 * Rejects manifolds whose weight is not identically zero.
 */
CheckReport check_petersen_wei(const RadialManifold& m, double lambda,
                               double p, double r, double R,
                               const CheckConfig& cfg = {});

/**
 * Comparison under a pointwise gradient bound: when sup |f'| <= a the
 * excess-gradient terms vanish identically and no volume-growth pair
 * (kappa, l) is consumed:
 *   (vol_f B(R)/v_a(R))^{1/(2p)} - (vol_f B(r)/v_a(r))^{1/(2p)}
 *     <= sqrt(1/D) * ratio_slope_c * (R^e - r^e)/e
 *        * ||Ric_f^lambda,-||_{p,f,a}^{1/2}(R),  e = 1 - n/(2p).
 * Rejects when the gradient bound fails on a dense grid.
 */
CheckReport check_bounded_gradient_remark(const RadialManifold& m,
                                          double lambda, double a, double p,
                                          double r, double R,
                                          const CheckConfig& cfg = {});

}  // namespace wvc
