#pragma once

#include <functional>
#include <vector>

#include "wvc/quadrature.hpp"
#include "wvc/radial_manifold.hpp"

namespace wvc {

// Exponent, exponential discount rate, and ball radius of the discounted
// L^p norm over a centered geodesic ball.
struct NormSpec {
  double p = 2.0;
  double a = 0.0;
  double R = 1.0;
};

// vol_f B(R) = |S^{n-1}| integral_0^R omega_f(r) dr.
double weighted_ball_volume(const RadialManifold& m, double R,
                            const QuadratureOptions& opt = {});

// |S^{n-1}| integral_0^R e^{-a r} omega_f(r) dr, the measure the discounted
// norms are taken against. Equals vol_f B(R) when a = 0.
double discounted_ball_volume(const RadialManifold& m, double a, double R,
                              const QuadratureOptions& opt = {});

// integral_{B(R)} g dvol_f for a radial integrand g, i.e.
// |S^{n-1}| integral_0^R g(r) omega_f(r) dr. A power law g ~ r^beta at 0 may
// be declared through singular_exponent (the omega_f factor contributes its
// own r^{n-1}, which the implementation adds on the caller's behalf).
double ball_integral(const RadialManifold& m, double R,
                     const std::function<double(double)>& g,
                     const QuadratureOptions& opt = {},
                     double singular_exponent = 0.0);

// ( |S^{n-1}| integral_0^R |g|^p e^{-a r} omega_f dr )^{1/p}.
// singular_exponent again refers to g alone.
double weighted_lp_norm(const RadialManifold& m,
                        const std::function<double(double)>& g,
                        const NormSpec& spec, const QuadratureOptions& opt = {},
                        double singular_exponent = 0.0);

// Smallest kappa such that vol_f B(r) <= kappa r^l for all 0 < r <= R0,
// estimated as the maximum of vol_f B(r)/r^l over a dense grid. Near the
// pole vol_f B(r) ~ |S^{n-1}| r^n / n, so for l <= n the ratio stays finite;
// the small-r part of the sup is covered by an explicit envelope of that
// asymptotic rather than by grid points. Requires n/2 < l <= n.
double kappa_for_growth(const RadialManifold& m, double l, double R0,
                        int grid_points = 512,
                        const QuadratureOptions& opt = {});

}  // namespace wvc
