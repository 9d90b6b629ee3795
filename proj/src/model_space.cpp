#include "wvc/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace wvc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_radius_in_domain(const ModelSpace& m, double r,
                              const char* where) {
  if (!(r >= 0.0)) {
    throw std::invalid_argument(std::string(where) + ": requires r >= 0");
  }
  if (!(r < m.domain_limit())) {
    throw std::invalid_argument(std::string(where) +
                                ": requires r < pi/sqrt(lambda) for "
                                "positive curvature");
  }
}

// Gamma(n/2) for integer n >= 1 via the integer / half-integer recursion.
double gamma_half(int n) {
  if (n % 2 == 0) {
    double g = 1.0;  // Gamma(n/2) = (n/2 - 1)!
    for (int k = 2; k <= n / 2 - 1; ++k) g *= k;
    return g;
  }
  double g = std::sqrt(std::numbers::pi);  // Gamma(1/2)
  for (double x = 0.5; x + 1.0 <= n / 2.0 + 0.25; x += 1.0) g *= x;
  return g;
}

// Wallis integral: integral_0^{pi/2} sin^k(t) dt by the exact recursion
// I_k = (k-1)/k * I_{k-2}.
double wallis(int k) {
  double v = (k % 2 == 0) ? std::numbers::pi / 2.0 : 1.0;
  for (int j = (k % 2 == 0) ? 2 : 3; j <= k; j += 2) v *= (j - 1.0) / j;
  return v;
}

}  // namespace

ModelSpace::ModelSpace(int n, double lambda) : n_(n), lambda_(lambda) {
  if (n < 2) throw std::invalid_argument("ModelSpace: requires n >= 2");
  if (!std::isfinite(lambda)) {
    throw std::invalid_argument("ModelSpace: lambda must be finite");
  }
}

double ModelSpace::domain_limit() const {
  return lambda_ > 0.0 ? std::numbers::pi / std::sqrt(lambda_) : kInf;
}

double ModelSpace::comparison_limit() const {
  return lambda_ > 0.0 ? std::numbers::pi / (2.0 * std::sqrt(lambda_)) : kInf;
}

double sn(const ModelSpace& m, double r) {
  require_radius_in_domain(m, r, "sn");
  const double lambda = m.curvature();
  if (lambda == 0.0) return r;
  if (lambda > 0.0) {
    const double s = std::sqrt(lambda);
    return std::sin(s * r) / s;
  }
  const double s = std::sqrt(-lambda);
  return std::sinh(s * r) / s;
}

double sn_prime(const ModelSpace& m, double r) {
  require_radius_in_domain(m, r, "sn_prime");
  const double lambda = m.curvature();
  if (lambda == 0.0) return 1.0;
  if (lambda > 0.0) return std::cos(std::sqrt(lambda) * r);
  return std::cosh(std::sqrt(-lambda) * r);
}

double h_model(const ModelSpace& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("h_model: requires r > 0");
  require_radius_in_domain(m, r, "h_model");
  return (m.dimension() - 1) * sn_prime(m, r) / sn(m, r);
}

double h_model_prime(const ModelSpace& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("h_model_prime: requires r > 0");
  require_radius_in_domain(m, r, "h_model_prime");
  const double q = sn_prime(m, r) / sn(m, r);
  return (m.dimension() - 1) * (-m.curvature() - q * q);
}

double omega_model(const ModelSpace& m, double r) {
  require_radius_in_domain(m, r, "omega_model");
  return std::pow(sn(m, r), m.dimension() - 1);
}

double unit_sphere_area(int n) {
  if (n < 2) throw std::invalid_argument("unit_sphere_area: requires n >= 2");
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / gamma_half(n);
}

double ball_volume_model(const ModelSpace& m, double r,
                         const QuadratureOptions& opt) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("ball_volume_model: requires r > 0");
  }
  require_radius_in_domain(m, r, "ball_volume_model");
  const QuadratureResult q =
      integrate([&m](double t) { return omega_model(m, t); }, 0.0, r, opt);
  return unit_sphere_area(m.dimension()) * q.value;
}

double weighted_ball_volume_model(const ModelSpace& m, double a, double r,
                                  const QuadratureOptions& opt) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("weighted_ball_volume_model: requires r > 0");
  }
  if (!(a >= 0.0)) {
    throw std::invalid_argument("weighted_ball_volume_model: requires a >= 0");
  }
  require_radius_in_domain(m, r, "weighted_ball_volume_model");
  const QuadratureResult q = integrate(
      [&m, a](double t) { return std::exp(a * t) * omega_model(m, t); }, 0.0,
      r, opt);
  return unit_sphere_area(m.dimension()) * q.value;
}

double alpha(const ModelSpace& m, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("alpha: requires s > 0");
  if (!(s <= m.comparison_limit() * (1.0 + 1e-12))) {
    throw std::invalid_argument(
        "alpha: requires s <= pi/(2 sqrt(lambda)) for positive curvature");
  }
  if (m.curvature() == 0.0) return s / m.dimension();
  const QuadratureResult q =
      integrate([&m](double t) { return omega_model(m, t); }, 0.0, s, {});
  return q.value / omega_model(m, s);
}

double alpha_max(const ModelSpace& m, double R, int grid_points) {
  double best = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    best = std::max(best, alpha(m, R * i / grid_points));
  }
  return best;
}

double max_t_snprime_over_sn(const ModelSpace& m, double R, int grid_points) {
  double best = 1.0;  // t sn'/sn -> 1 as t -> 0
  for (int i = 1; i <= grid_points; ++i) {
    const double t = R * i / grid_points;
    best = std::max(best, t * sn_prime(m, t) / sn(m, t));
  }
  return best;
}

double model_volume_ratio_bound(const ModelSpace& m) {
  const int n = m.dimension();
  const double area = unit_sphere_area(n);
  if (m.curvature() <= 0.0) {
    // v(n, lambda, R) >= v(n, 0, R) = area * R^n / n.
    return n / area;
  }
  // By scaling, R^n / v(n, lambda, R) = u^n / v(n, 1, u) with u = sqrt(lambda)
  // * R, which increases in u; the supremum over the comparison range sits at
  // u = pi/2, where v(n, 1, pi/2) = area * wallis(n-1).
  const double u = std::numbers::pi / 2.0;
  return std::pow(u, n) / (area * wallis(n - 1));
}

CheckReport check_alpha_monotone(const ModelSpace& m,
                                 std::span<const double> grid,
                                 const Tolerances& tol) {
  if (grid.size() < 2) {
    throw std::invalid_argument("check_alpha_monotone: needs >= 2 grid points");
  }
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) {
      throw std::invalid_argument(
          "check_alpha_monotone: grid must be strictly increasing");
    }
  }

  // Prefix integrals of omega so the grid costs one quadrature per segment.
  std::vector<double> alpha_vals(grid.size());
  double prefix = 0.0;
  double prev = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    prefix +=
        integrate([&m](double t) { return omega_model(m, t); }, prev, grid[i],
                  {})
            .value;
    prev = grid[i];
    alpha_vals[i] = prefix / omega_model(m, grid[i]);
  }

  double min_diff = kInf;
  size_t worst = 0;
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    const double d = alpha_vals[i + 1] - alpha_vals[i];
    if (d < min_diff) {
      min_diff = d;
      worst = i + 1;
    }
  }

  CheckReport rep;
  rep.check_name = "alpha_monotone";
  rep.manifold = "model";
  rep.parameters = {{"n", static_cast<double>(m.dimension())},
                    {"lambda", m.curvature()},
                    {"grid_points", static_cast<double>(grid.size())}};
  rep.lhs = -min_diff;
  rep.rhs = 0.0;
  rep.margin = min_diff;
  rep.worst_lo = rep.worst_hi = grid[worst];
  rep.pass = min_diff >= -tol.monotone_tol;
  rep.resolution.grid_points = static_cast<long>(grid.size());
  rep.resolution.abs_tol = tol.monotone_tol;
  return rep;
}

std::vector<double> radial_grid(double hi, int count) {
  if (!(hi > 0.0) || count < 1) {
    throw std::invalid_argument("radial_grid: requires hi > 0 and count >= 1");
  }
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = hi * (i + 1) / count;
  g.back() = hi;  // exact, so hi = r_max stays inside closed-domain guards
  return g;
}

}  // namespace wvc
