#pragma once

#include <optional>
#include <string>

#include "wvc/radial_profile.hpp"

namespace wvc {

// Eigenvalues of the weighted Ricci tensor Ric + Hess f at a point,
// with respect to the metric: the radial direction and the (n-1)-fold
// tangential one.
struct RicciEigenvalues {
  double radial;
  double tangential;
};

// Taylor data of the warping profile at the pole,
//   phi(r) = r + b2 r^2 + b3 r^3 + b4 r^4 + O(r^5),
// used by the cancellation-safe evaluation of h - h_lambda near r = 0.
// Catalog entries pass exact coefficients; otherwise they are recovered by
// one-sided finite differences of phi''.
struct PoleSeries {
  double b2 = 0.0;
  double b3 = 0.0;
  double b4 = 0.0;
};

/**
 * Rotationally symmetric weighted manifold
 *
 *   g = dr^2 + phi(r)^2 g_{S^{n-1}},   measure e^{-f(r)} dvol,
 *
 * on 0 < r <= r_max. Construction validates phi(0) = 0, phi'(0) = 1,
 * f'(0) = 0, phi > 0 on (0, r_max], and cross-checks both profiles'
 * derivatives against finite differences.
 *
 * Pointwise quantities (all with respect to the weighted Ricci tensor
 * Ric_f = Ric + Hess f):
 *
 *   h      = (n-1) phi'/phi
 *   h_f    = h - f'
 *   mu_rad = -(n-1) phi''/phi + f''
 *   mu_tan = -phi''/phi + (n-2)(1 - phi'^2)/phi^2 + f' phi'/phi
 *   psi    = (h_f - h_lambda - a)_+
 *   rho_a  = (|f'| - a)_+
 *   omega_f = phi^{n-1} e^{-f}
 *
 * The difference h - h_lambda degenerates to 0/0-style cancellation at the
 * pole; below r_switch (1e-3 times the curvature length scale) it is
 * evaluated from the pole series of phi'/phi - sn'/sn instead of the raw
 * quotients.
 */
class RadialManifold {
 public:
  RadialManifold(std::string name, int n, RadialProfile warp,
                 RadialProfile weight, double r_max,
                 std::optional<PoleSeries> series = std::nullopt);

  const std::string& name() const { return name_; }
  int dimension() const { return n_; }
  double r_max() const { return r_max_; }
  const PoleSeries& pole_series() const { return series_; }

  double phi(double r) const;
  double phi_d1(double r) const;
  double phi_d2(double r) const;
  double f(double r) const;
  double f_d1(double r) const;
  double f_d2(double r) const;

  double mean_curvature(double r) const;           // h
  double weighted_mean_curvature(double r) const;  // h_f

  // h - h_model(n, lambda, r), cancellation-safe at the pole.
  double mean_curvature_gap(double lambda, double r) const;

  RicciEigenvalues ricci_f_eigenvalues(double r) const;
  double mu_f(double r) const;  // min of the two eigenvalues

  // Ric_f^lambda,- = ((n-1) lambda - mu_f)_+ : the pointwise failure of
  // Ric_f >= (n-1) lambda g.
  double ric_f_lambda_minus(double lambda, double r) const;

  // psi = (h_f - h_lambda - a)_+. For lambda > 0 requires
  // r <= pi/(2 sqrt(lambda)).
  double psi(double lambda, double a, double r) const;
  // d/dr (h_f - h_lambda - a); meaningful on the active set psi > 0.
  double psi_prime(double lambda, double a, double r) const;

  double rho_a(double a, double r) const;

  double volume_element(double r) const;  // omega_f, per unit solid angle

  // | d/dr omega_f - h_f omega_f | with both sides assembled independently;
  // algebraically zero, so anything beyond rounding noise is a regression.
  double volume_element_log_derivative_residual(double r) const;

 private:
  void require_radius(double r, const char* where) const;
  void require_comparison_radius(double lambda, double r,
                                 const char* where) const;

  std::string name_;
  int n_;
  RadialProfile warp_;
  RadialProfile weight_;
  double r_max_;
  PoleSeries series_;
  double r_switch_;
};

}  // namespace wvc
