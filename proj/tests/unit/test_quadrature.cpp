#include "wvc/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

using wvc::QuadratureError;
using wvc::QuadratureOptions;
using wvc::QuadratureResult;

TEST_CASE("polynomial moment integrates exactly") {
  const QuadratureResult r =
      wvc::integrate([](double t) { return t * t; }, 0.0, 1.0);
  CHECK(std::abs(r.value - 1.0 / 3.0) <= 1e-14);
  CHECK(r.evaluations > 0);
}

TEST_CASE("exponential moment matches integration by parts") {
  // integral_0^1 t e^t dt = (t - 1) e^t at the endpoints = 1.
  const QuadratureResult r =
      wvc::integrate([](double t) { return t * std::exp(t); }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("error estimate respects the requested tolerance on success") {
  const QuadratureOptions opt;
  const auto integrands = {
      std::function<double(double)>([](double t) { return std::sin(t); }),
      std::function<double(double)>([](double t) { return std::exp(-t * t); }),
      std::function<double(double)>(
          [](double t) { return 1.0 / (1.0 + t * t); }),
  };
  for (const auto& g : integrands) {
    const QuadratureResult r = wvc::integrate(g, 0.0, 10.0, opt);
    CHECK(r.error_estimate <= opt.rel_tol * std::max(1.0, std::abs(r.value)));
  }
}

TEST_CASE("oscillatory integrand converges to the antiderivative") {
  const QuadratureResult r =
      wvc::integrate([](double t) { return std::sin(t); }, 0.0, 10.0);
  CHECK(r.value == doctest::Approx(1.0 - std::cos(10.0)).epsilon(1e-10));
}

TEST_CASE("adaptive result agrees with a composite Simpson reference") {
  const auto g = [](double t) { return std::exp(-t * t) * std::cos(3.0 * t); };
  const QuadratureResult r = wvc::integrate(g, 0.0, 2.0);
  CHECK(r.value ==
        doctest::Approx(simpson_oracle(g, 0.0, 2.0)).epsilon(1e-10));
}

TEST_CASE("declared inverse square root singularity") {
  QuadratureOptions opt;
  opt.singular_exponent = -0.5;
  const QuadratureResult r = wvc::integrate(
      [](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, opt);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("strong but integrable singularity stays within tolerance") {
  QuadratureOptions opt;
  opt.singular_exponent = -0.9;
  const QuadratureResult r =
      wvc::integrate([](double t) { return std::pow(t, -0.9); }, 0.0, 1.0, opt);
  // integral_0^1 t^{-0.9} dt = 10.
  CHECK(r.value == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("singular declaration with a regular prefactor") {
  QuadratureOptions opt;
  opt.singular_exponent = -0.5;
  const auto g = [](double t) { return std::cos(t) / std::sqrt(t); };
  // Fresnel-type value, pinned by the cosine series on the singular head
  //   int_0^eps cos(t)/sqrt(t) = 2 eps^{1/2} - eps^{5/2}/5 + eps^{9/2}/108
  //                              - eps^{13/2}/4680 + O(eps^{17/2})
  // plus the Simpson reference on the regular tail.
  const double eps = 0.1;
  const double head = 2.0 * std::sqrt(eps) - std::pow(eps, 2.5) / 5.0 +
                      std::pow(eps, 4.5) / 108.0 - std::pow(eps, 6.5) / 4680.0;
  const double tail = simpson_oracle(g, eps, 1.0);
  const QuadratureResult r = wvc::integrate(g, 0.0, 1.0, opt);
  CHECK(r.value == doctest::Approx(head + tail).epsilon(1e-9));
}

TEST_CASE("empty interval integrates to zero without evaluations") {
  const QuadratureResult r =
      wvc::integrate([](double) { return 1.0; }, 2.0, 2.0);
  CHECK(r.value == 0.0);
  CHECK(r.evaluations == 0);
}

TEST_CASE("reversed bounds are rejected") {
  CHECK_THROWS_AS(wvc::integrate([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("non-integrable exponent is rejected") {
  QuadratureOptions opt;
  opt.singular_exponent = -1.0;
  CHECK_THROWS_AS(
      wvc::integrate([](double t) { return 1.0 / t; }, 0.0, 1.0, opt),
      std::invalid_argument);
}

TEST_CASE("exhausted budget raises an error carrying the best estimate") {
  QuadratureOptions opt;
  opt.rel_tol = 1e-15;
  opt.max_evaluations = 450;
  try {
    wvc::integrate([](double t) { return std::sin(100.0 * t) / (1.0 + t); },
                   0.0, 10.0, opt);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best().evaluations > 0);
    CHECK(e.best().evaluations <= opt.max_evaluations);
    CHECK(std::isfinite(e.best().value));
    CHECK(e.best().error_estimate > 0.0);
  }
}

TEST_CASE("finite difference recovers polynomial derivatives") {
  double err = 0.0;
  const double d =
      wvc::finite_difference([](double t) { return t * t; }, 1.0, 1e-3, &err);
  CHECK(std::abs(d - 2.0) <= 1e-10);
  CHECK(err >= 0.0);
}

TEST_CASE("finite difference of the hyperbolic warp gives cosh") {
  const double d = wvc::finite_difference(
      [](double t) { return std::sinh(t); }, 0.5, 1e-3);
  CHECK(d == doctest::Approx(std::cosh(0.5)).epsilon(1e-10));
}

TEST_CASE("finite difference propagates evaluation noise") {
  double err = 0.0;
  wvc::finite_difference([](double t) { return t; }, 1.0, 1e-3, &err, 1e-6);
  CHECK(err >= 2.0 * 1e-6 / 1e-3);
}

TEST_CASE("finite difference rejects a non-positive step") {
  CHECK_THROWS_AS(wvc::finite_difference([](double t) { return t; }, 1.0, 0.0),
                  std::invalid_argument);
}
