#include "wvc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace wvc {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule. Standard values; the Gauss nodes are the odd-index Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = g(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = g(c - x) + g(c + x);
    resk += fsum * kWgk[j];
    if (j % 2 == 1) resg += fsum * kWg[j / 2];
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

QuadratureResult integrate_regular(const std::function<double(double)>& g,
                                   double r0, double r1,
                                   const QuadratureOptions& opt) {
  // Start from a handful of segments so a deceptively symmetric integrand
  // cannot fool the first error estimate.
  constexpr int kInitialSegments = 4;
  constexpr double kMinWidthFactor = 1e-14;
  const double min_width = kMinWidthFactor * (r1 - r0);

  std::priority_queue<Segment> active;
  double total = 0.0, err_active = 0.0;
  double frozen_value = 0.0, frozen_error = 0.0;
  long evals = 0;

  auto push = [&](double a, double b) {
    Segment s = gk15(g, a, b);
    evals += 15;
    total += s.value;
    if (b - a <= min_width) {
      // Too narrow to refine further; park its error.
      frozen_value += s.value;
      frozen_error += s.error;
    } else {
      err_active += s.error;
      active.push(s);
    }
  };

  for (int i = 0; i < kInitialSegments; ++i) {
    const double a = r0 + (r1 - r0) * i / kInitialSegments;
    const double b = r0 + (r1 - r0) * (i + 1) / kInitialSegments;
    push(a, b);
  }

  while (true) {
    const double err = err_active + frozen_error;
    if (err <= opt.rel_tol * std::max(1.0, std::abs(total))) {
      return {total, err, evals};
    }
    if (active.empty() || evals + 30 > opt.max_evaluations) {
      QuadratureResult best{total, err, evals};
      throw QuadratureError(
          active.empty()
              ? "quadrature stalled: remaining error sits on segments at "
                "minimal width"
              : "quadrature budget exhausted before reaching tolerance",
          best);
    }
    Segment worst = active.top();
    active.pop();
    total -= worst.value;
    err_active -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    push(worst.a, mid);
    push(mid, worst.b);
  }
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& g, double r0,
                           double r1, const QuadratureOptions& opt) {
  if (!(r0 <= r1)) {
    throw std::invalid_argument("integrate: requires r0 <= r1");
  }
  if (r0 == r1) return {0.0, 0.0, 0};
  if (opt.singular_exponent <= -1.0) {
    throw std::invalid_argument(
        "integrate: singular_exponent must be > -1 (integrable)");
  }

  if (opt.singular_exponent < 0.0) {
    // r = r0 + t^m straightens the power law: the transformed integrand
    // behaves like t^{m(beta+1)-1} near t = 0, which m makes at least t^2.
    const double beta = opt.singular_exponent;
    const int m = static_cast<int>(std::ceil(3.0 / (1.0 + beta)));
    const double span = r1 - r0;
    const double t1 = std::pow(span, 1.0 / m);
    auto transformed = [&g, r0, m](double t) {
      const double tm = std::pow(t, m);
      return g(r0 + tm) * m * (tm / t);
    };
    QuadratureOptions inner = opt;
    inner.singular_exponent = 0.0;
    return integrate_regular(transformed, 0.0, t1, inner);
  }
  return integrate_regular(g, r0, r1, opt);
}

double finite_difference(const std::function<double(double)>& g, double r,
                         double h, double* error_estimate, double eval_noise) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_difference: h > 0");
  const double d1 = (g(r + h) - g(r - h)) / (2.0 * h);
  const double d2 = (g(r + h / 2) - g(r - h / 2)) / h;
  const double extrapolated = (4.0 * d2 - d1) / 3.0;
  if (error_estimate != nullptr) {
    *error_estimate = std::abs(extrapolated - d2) + 2.0 * eval_noise / h;
  }
  return extrapolated;
}

}  // namespace wvc
