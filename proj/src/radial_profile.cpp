#include "wvc/radial_profile.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace wvc {

namespace {

double central(const std::function<double(double)>& f, double r, double h) {
  return (f(r + h) - f(r - h)) / (2.0 * h);
}

void check_pair(const std::function<double(double)>& f,
                const std::function<double(double)>& df, double r, double h,
                double rel_tol, const char* label) {
  const double fd = central(f, r, h);
  const double exact = df(r);
  const double scale = std::max({1.0, std::abs(exact), std::abs(f(r))});
  if (std::abs(fd - exact) > rel_tol * scale) {
    std::ostringstream msg;
    msg << "profile derivative mismatch (" << label << ") at r = " << r
        << ": closed form " << exact << " vs finite difference " << fd;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void validate_profile_derivatives(const RadialProfile& p, double lo, double hi,
                                  int sample_count, double rel_tol,
                                  unsigned seed) {
  if (!(lo < hi)) {
    throw std::invalid_argument(
        "validate_profile_derivatives: requires lo < hi");
  }
  std::mt19937 rng(seed);
  // Keep samples away from the endpoints so the stencil stays inside.
  std::uniform_real_distribution<double> dist(lo + 0.05 * (hi - lo),
                                              hi - 0.05 * (hi - lo));
  for (int i = 0; i < sample_count; ++i) {
    const double r = dist(rng);
    const double h = 1e-5 * std::max(1.0, std::abs(r));
    check_pair(p.value, p.d1, r, h, rel_tol, "d1 vs value");
    check_pair(p.d1, p.d2, r, h, rel_tol, "d2 vs d1");
  }
}

}  // namespace wvc
