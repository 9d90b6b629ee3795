#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace wvc {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

// Thrown when the evaluation budget runs out before the tolerance is met.
// Carries the best estimate achieved so the caller can report it.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : std::runtime_error(what), best_(best) {}
  const QuadratureResult& best() const { return best_; }

 private:
  QuadratureResult best_;
};

struct QuadratureOptions {
  // Convergence target: error_estimate <= rel_tol * max(1, |value|).
  double rel_tol = 1e-9;
  long max_evaluations = 400000;
  // Power-law exponent of the integrand at the left endpoint, e.g. -0.5 for
  // an integrand behaving like r^{-1/2} near r0. Must be > -1 (integrable).
  // 0 means the integrand is regular. Only r0 = 0 singularities are
  // supported; the integrand is never evaluated at the endpoints.
  double singular_exponent = 0.0;
};

/**
 * Adaptive quadrature of g over [r0, r1].
 *
 * Gauss-Kronrod 15(7) on a worst-segment-first bisection queue. A declared
 * left-endpoint singularity r^beta is removed by the substitution r = t^m
 * with m(beta+1) >= 3, after which the transformed integrand vanishes at
 * least quadratically at t = 0 and the regular machinery applies.
 *
 * Throws std::invalid_argument for r0 > r1 or a non-integrable exponent,
 * QuadratureError when the budget is exhausted. r0 == r1 yields zero.
 */
QuadratureResult integrate(const std::function<double(double)>& g, double r0,
                           double r1, const QuadratureOptions& opt = {});

/**
 * Derivative of g at r: central difference with one Richardson level.
 *
 * eval_noise is the absolute error of a single evaluation of g (e.g. a
 * quadrature error estimate); it is propagated into *error_estimate along
 * with the Richardson discrepancy.
 */
double finite_difference(const std::function<double(double)>& g, double r,
                         double h, double* error_estimate = nullptr,
                         double eval_noise = 0.0);

}  // namespace wvc
