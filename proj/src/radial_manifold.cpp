#include "wvc/radial_manifold.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wvc/model_space.hpp"

namespace wvc {

namespace {

// Recover phi''' (0) and phi'''' (0) from one-sided second-order stencils on
// phi''. Only used when the caller does not supply exact pole coefficients.
PoleSeries series_from_derivatives(const RadialProfile& warp) {
  PoleSeries s;
  s.b2 = warp.d2(0.0) / 2.0;
  {
    const double h = 1e-5;
    const double d3 = (-3.0 * warp.d2(0.0) + 4.0 * warp.d2(h) -
                       warp.d2(2.0 * h)) /
                      (2.0 * h);
    s.b3 = d3 / 6.0;
  }
  {
    const double h = 1e-4;
    const double d4 = (2.0 * warp.d2(0.0) - 5.0 * warp.d2(h) +
                       4.0 * warp.d2(2.0 * h) - warp.d2(3.0 * h)) /
                      (h * h);
    s.b4 = d4 / 24.0;
  }
  return s;
}

}  // namespace

RadialManifold::RadialManifold(std::string name, int n, RadialProfile warp,
                               RadialProfile weight, double r_max,
                               std::optional<PoleSeries> series)
    : name_(std::move(name)),
      n_(n),
      warp_(std::move(warp)),
      weight_(std::move(weight)),
      r_max_(r_max) {
  if (n_ < 2) throw std::invalid_argument("RadialManifold: requires n >= 2");
  if (!(r_max_ > 0.0)) {
    throw std::invalid_argument("RadialManifold: requires r_max > 0");
  }
  if (std::abs(warp_.value(0.0)) > 1e-12) {
    throw std::invalid_argument("RadialManifold: requires phi(0) = 0");
  }
  if (std::abs(warp_.d1(0.0) - 1.0) > 1e-9) {
    throw std::invalid_argument("RadialManifold: requires phi'(0) = 1");
  }
  if (std::abs(weight_.d1(0.0)) > 1e-9) {
    throw std::invalid_argument("RadialManifold: requires f'(0) = 0");
  }
  for (int i = 1; i <= 512; ++i) {
    const double r = r_max_ * i / 512.0;
    if (!(warp_.value(r) > 0.0)) {
      std::ostringstream msg;
      msg << "RadialManifold: phi must stay positive on (0, r_max]; "
          << "violated near r = " << r;
      throw std::invalid_argument(msg.str());
    }
  }
  validate_profile_derivatives(warp_, 0.0, r_max_);
  validate_profile_derivatives(weight_, 0.0, r_max_);
  series_ = series ? *series : series_from_derivatives(warp_);
  r_switch_ = 1e-3 / std::sqrt(std::max(1.0, 6.0 * std::abs(series_.b3)));
}

void RadialManifold::require_radius(double r, const char* where) const {
  if (!(r > 0.0 && r <= r_max_)) {
    std::ostringstream msg;
    msg << where << ": requires 0 < r <= r_max (r = " << r
        << ", r_max = " << r_max_ << ")";
    throw std::invalid_argument(msg.str());
  }
}

void RadialManifold::require_comparison_radius(double lambda, double r,
                                               const char* where) const {
  require_radius(r, where);
  if (lambda > 0.0 &&
      r > std::numbers::pi / (2.0 * std::sqrt(lambda)) * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << where
        << ": requires r <= pi/(2 sqrt(lambda)) for positive curvature";
    throw std::invalid_argument(msg.str());
  }
}

double RadialManifold::phi(double r) const { return warp_.value(r); }
double RadialManifold::phi_d1(double r) const { return warp_.d1(r); }
double RadialManifold::phi_d2(double r) const { return warp_.d2(r); }
double RadialManifold::f(double r) const { return weight_.value(r); }
double RadialManifold::f_d1(double r) const { return weight_.d1(r); }
double RadialManifold::f_d2(double r) const { return weight_.d2(r); }

double RadialManifold::mean_curvature(double r) const {
  require_radius(r, "mean_curvature");
  return (n_ - 1) * warp_.d1(r) / warp_.value(r);
}

double RadialManifold::weighted_mean_curvature(double r) const {
  require_radius(r, "weighted_mean_curvature");
  return mean_curvature(r) - weight_.d1(r);
}

double RadialManifold::mean_curvature_gap(double lambda, double r) const {
  require_radius(r, "mean_curvature_gap");
  const ModelSpace model(n_, lambda);
  if (!(r < model.domain_limit())) {
    throw std::invalid_argument(
        "mean_curvature_gap: r outside the model domain for lambda > 0");
  }
  const double scale =
      std::max({1.0, std::abs(lambda), 6.0 * std::abs(series_.b3)});
  if (r < 1e-3 / std::sqrt(scale)) {
    // Series of phi'/phi - sn'/sn at the pole; the raw quotients cancel to
    // O(r) against 1/r each and lose precision.
    const double b2 = series_.b2, b3 = series_.b3, b4 = series_.b4;
    const double c0 = b2;
    const double c1 = 2.0 * b3 - b2 * b2 + lambda / 3.0;
    const double c2 = 3.0 * b4 - 3.0 * b2 * b3 + b2 * b2 * b2;
    return (n_ - 1) * (c0 + (c1 + c2 * r) * r);
  }
  return (n_ - 1) *
         (warp_.d1(r) / warp_.value(r) - sn_prime(model, r) / sn(model, r));
}

RicciEigenvalues RadialManifold::ricci_f_eigenvalues(double r) const {
  require_radius(r, "ricci_f_eigenvalues");
  const double p = warp_.value(r);
  const double p1 = warp_.d1(r);
  const double p2 = warp_.d2(r);
  RicciEigenvalues e;
  e.radial = -(n_ - 1) * p2 / p + weight_.d2(r);
  e.tangential = -p2 / p + (n_ - 2) * (1.0 - p1 * p1) / (p * p) +
                 weight_.d1(r) * p1 / p;
  return e;
}

double RadialManifold::mu_f(double r) const {
  const RicciEigenvalues e = ricci_f_eigenvalues(r);
  return std::min(e.radial, e.tangential);
}

double RadialManifold::ric_f_lambda_minus(double lambda, double r) const {
  return std::max((n_ - 1) * lambda - mu_f(r), 0.0);
}

double RadialManifold::psi(double lambda, double a, double r) const {
  require_comparison_radius(lambda, r, "psi");
  if (!(a >= 0.0)) throw std::invalid_argument("psi: requires a >= 0");
  const double v = mean_curvature_gap(lambda, r) - weight_.d1(r) - a;
  return v > 0.0 ? v : 0.0;
}

double RadialManifold::psi_prime(double lambda, double a, double r) const {
  require_comparison_radius(lambda, r, "psi_prime");
  if (!(a >= 0.0)) throw std::invalid_argument("psi_prime: requires a >= 0");
  const double scale =
      std::max({1.0, std::abs(lambda), 6.0 * std::abs(series_.b3)});
  if (r < 1e-3 / std::sqrt(scale)) {
    const double b2 = series_.b2, b3 = series_.b3, b4 = series_.b4;
    const double c1 = 2.0 * b3 - b2 * b2 + lambda / 3.0;
    const double c2 = 3.0 * b4 - 3.0 * b2 * b3 + b2 * b2 * b2;
    return (n_ - 1) * (c1 + 2.0 * c2 * r) - weight_.d2(r);
  }
  // h_f' - h_lambda' with the divergent (.)^2 parts reduced to the stable
  // product (phi'/phi - sn'/sn)(phi'/phi + sn'/sn).
  const ModelSpace model(n_, lambda);
  const double qp = warp_.d1(r) / warp_.value(r);
  const double qm = sn_prime(model, r) / sn(model, r);
  const double gap1 = mean_curvature_gap(lambda, r) / (n_ - 1);
  return (n_ - 1) *
             (warp_.d2(r) / warp_.value(r) + lambda - gap1 * (qp + qm)) -
         weight_.d2(r);
}

double RadialManifold::rho_a(double a, double r) const {
  if (!(r >= 0.0 && r <= r_max_)) {
    throw std::invalid_argument("rho_a: requires 0 <= r <= r_max");
  }
  if (!(a >= 0.0)) throw std::invalid_argument("rho_a: requires a >= 0");
  return std::max(std::abs(weight_.d1(r)) - a, 0.0);
}

double RadialManifold::volume_element(double r) const {
  if (!(r >= 0.0 && r <= r_max_)) {
    throw std::invalid_argument("volume_element: requires 0 <= r <= r_max");
  }
  return std::pow(warp_.value(r), n_ - 1) * std::exp(-weight_.value(r));
}

double RadialManifold::volume_element_log_derivative_residual(double r) const {
  require_radius(r, "volume_element_log_derivative_residual");
  const double p = warp_.value(r);
  const double expf = std::exp(-weight_.value(r));
  const double dw =
      ((n_ - 1) * std::pow(p, n_ - 2) * warp_.d1(r) -
       weight_.d1(r) * std::pow(p, n_ - 1)) *
      expf;
  return std::abs(dw - weighted_mean_curvature(r) * volume_element(r));
}

}  // namespace wvc
