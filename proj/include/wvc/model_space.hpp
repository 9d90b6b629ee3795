#pragma once

#include <span>
#include <vector>

#include "wvc/quadrature.hpp"
#include "wvc/report.hpp"

namespace wvc {

/**
 * Simply connected model space of dimension n and constant sectional
 * curvature lambda. All radial quantities derive from
 *
 *   sn_lambda(r) = r                                (lambda = 0)
 *                  sin(sqrt(lambda) r)/sqrt(lambda) (lambda > 0)
 *                  sinh(sqrt(-lambda) r)/sqrt(-lambda) (lambda < 0),
 *
 * the solution of y'' + lambda y = 0 with y(0) = 0, y'(0) = 1.
 *
 * For lambda > 0 geometric quantities live on r < pi/sqrt(lambda); the
 * comparison inequalities additionally require r <= pi/(2 sqrt(lambda)),
 * where sn' >= 0. Both limits are exposed and enforced by the callers that
 * need them.
 */
class ModelSpace {
 public:
  ModelSpace(int n, double lambda);

  int dimension() const { return n_; }
  double curvature() const { return lambda_; }

  // pi/sqrt(lambda) for lambda > 0, +inf otherwise.
  double domain_limit() const;
  // pi/(2 sqrt(lambda)) for lambda > 0, +inf otherwise.
  double comparison_limit() const;

 private:
  int n_;
  double lambda_;
};

double sn(const ModelSpace& m, double r);
double sn_prime(const ModelSpace& m, double r);

// Mean curvature of the model sphere of radius r: (n-1) sn'/sn. r > 0.
double h_model(const ModelSpace& m, double r);
// d/dr of h_model: (n-1)(-lambda - (sn'/sn)^2).
double h_model_prime(const ModelSpace& m, double r);

// Area element per unit solid angle: sn^{n-1}.
double omega_model(const ModelSpace& m, double r);

// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2), Gamma by the half-integer recursion.
double unit_sphere_area(int n);

// v(n, lambda, r) = |S^{n-1}| * integral_0^r sn^{n-1}.
double ball_volume_model(const ModelSpace& m, double r,
                         const QuadratureOptions& opt = {});

// v_a(n, lambda, a, r) = |S^{n-1}| * integral_0^r e^{a t} sn^{n-1}(t) dt.
double weighted_ball_volume_model(const ModelSpace& m, double a, double r,
                                  const QuadratureOptions& opt = {});

// alpha_lambda(s) = integral_0^s omega / omega(s). Exactly s/n when
// lambda = 0. For lambda > 0 requires s <= comparison_limit().
double alpha(const ModelSpace& m, double s);

// max of alpha over (0, R], taken on a grid plus the endpoint. alpha is
// non-decreasing, so this equals alpha(R) up to grid noise; the grid keeps
// the bound honest without leaning on the monotonicity claim.
double alpha_max(const ModelSpace& m, double R, int grid_points = 128);

// max over (0, R] of t * sn'(t)/sn(t), including the t -> 0 limit 1.
double max_t_snprime_over_sn(const ModelSpace& m, double R,
                             int grid_points = 128);

// Upper bound for R^n / v(n, lambda, R) over the admissible range of R:
// n/|S^{n-1}| for lambda <= 0 (Euclidean domination), and the value at
// R = pi/(2 sqrt(lambda)) for lambda > 0 (the ratio is increasing there).
double model_volume_ratio_bound(const ModelSpace& m);

// Asserts alpha is non-decreasing along the given strictly increasing grid.
// The report's margin carries the minimal forward difference.
CheckReport check_alpha_monotone(const ModelSpace& m,
                                 std::span<const double> grid,
                                 const Tolerances& tol = {});

// count points r_i = hi * (i+1)/count, i.e. the uniform grid on (0, hi].
std::vector<double> radial_grid(double hi, int count);

}  // namespace wvc
