#include "wvc/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "wvc/model_space.hpp"

namespace wvc {

namespace {

void require_ball_radius(const RadialManifold& m, double R,
                         const char* where) {
  if (!(R > 0.0 && R <= m.r_max())) {
    throw std::invalid_argument(std::string(where) +
                                ": requires 0 < R <= r_max");
  }
}

QuadratureOptions with_exponent(const QuadratureOptions& opt, double beta) {
  QuadratureOptions out = opt;
  out.singular_exponent = beta < 0.0 ? beta : 0.0;
  return out;
}

}  // namespace

double weighted_ball_volume(const RadialManifold& m, double R,
                            const QuadratureOptions& opt) {
  require_ball_radius(m, R, "weighted_ball_volume");
  const double area = unit_sphere_area(m.dimension());
  return area *
         integrate([&m](double r) { return m.volume_element(r); }, 0.0, R, opt)
             .value;
}

double discounted_ball_volume(const RadialManifold& m, double a, double R,
                              const QuadratureOptions& opt) {
  require_ball_radius(m, R, "discounted_ball_volume");
  if (!(a >= 0.0)) {
    throw std::invalid_argument("discounted_ball_volume: requires a >= 0");
  }
  const double area = unit_sphere_area(m.dimension());
  return area * integrate(
                    [&m, a](double r) {
                      return std::exp(-a * r) * m.volume_element(r);
                    },
                    0.0, R, opt)
                    .value;
}

double ball_integral(const RadialManifold& m, double R,
                     const std::function<double(double)>& g,
                     const QuadratureOptions& opt, double singular_exponent) {
  require_ball_radius(m, R, "ball_integral");
  const double area = unit_sphere_area(m.dimension());
  const double beta = singular_exponent + (m.dimension() - 1);
  return area * integrate([&m, &g](double r) { return g(r) * m.volume_element(r); },
                          0.0, R, with_exponent(opt, beta))
                    .value;
}

double weighted_lp_norm(const RadialManifold& m,
                        const std::function<double(double)>& g,
                        const NormSpec& spec, const QuadratureOptions& opt,
                        double singular_exponent) {
  require_ball_radius(m, spec.R, "weighted_lp_norm");
  if (!(spec.p > 0.0)) {
    throw std::invalid_argument("weighted_lp_norm: requires p > 0");
  }
  if (!(spec.a >= 0.0)) {
    throw std::invalid_argument("weighted_lp_norm: requires a >= 0");
  }
  const double area = unit_sphere_area(m.dimension());
  const double p = spec.p;
  const double a = spec.a;
  const double beta = p * singular_exponent + (m.dimension() - 1);
  const double integral =
      integrate(
          [&m, &g, p, a](double r) {
            return std::pow(std::abs(g(r)), p) * std::exp(-a * r) *
                   m.volume_element(r);
          },
          0.0, spec.R, with_exponent(opt, beta))
          .value;
  return std::pow(area * integral, 1.0 / p);
}

double kappa_for_growth(const RadialManifold& m, double l, double R0,
                        int grid_points, const QuadratureOptions& opt) {
  const int n = m.dimension();
  if (!(l > n / 2.0 && l <= n)) {
    throw std::invalid_argument("kappa_for_growth: requires n/2 < l <= n");
  }
  if (!(R0 > 0.0 && R0 <= m.r_max())) {
    throw std::invalid_argument("kappa_for_growth: requires 0 < R0 <= r_max");
  }
  if (grid_points < 2) {
    throw std::invalid_argument("kappa_for_growth: requires grid_points >= 2");
  }

  const double area = unit_sphere_area(n);
  const auto wf = [&m](double r) { return m.volume_element(r); };

  // Running prefix integral over the grid; each cell adds one short segment.
  double kappa = 0.0;
  double acc = 0.0;
  double prev = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double r = R0 * (i + 1) / grid_points;
    acc += integrate(wf, prev, r, opt).value;
    prev = r;
    kappa = std::max(kappa, area * acc / std::pow(r, l));
  }

  // Below the first grid point, bound omega_f(t) <= max(u) t^{n-1} with
  // u(t) = (phi(t)/t)^{n-1} e^{-f(t)}, so vol_f B(r)/r^l stays under
  // |S^{n-1}| max(u) r^{n-l}/n, which is largest at the interval's right end.
  const double r_lo = R0 / grid_points;
  double u_max = std::exp(-m.f(0.0));
  for (int i = 1; i <= 64; ++i) {
    const double t = r_lo * i / 64.0;
    u_max = std::max(u_max, m.volume_element(t) / std::pow(t, n - 1));
  }
  kappa = std::max(kappa, area * u_max * std::pow(r_lo, n - l) / n);
  return kappa;
}

}  // namespace wvc
