#include "wvc/checks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "wvc/catalog.hpp"
#include "wvc/model_space.hpp"

using wvc::CheckReport;
using wvc::make_manifold;
using wvc::RadialManifold;

namespace {

constexpr double kPi = std::numbers::pi;

bool notes_contain(const CheckReport& rep, const char* needle) {
  return rep.resolution.notes.find(needle) != std::string::npos;
}

template <typename Fn>
void check_throws_with(const char* needle, Fn&& fn) {
  try {
    fn();
    FAIL("expected a rejection mentioning \"", needle, "\"");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find(needle) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("pointwise slope check is vacuous without excess") {
  const RadialManifold m = make_manifold("euclidean");
  const std::vector<double> grid = wvc::radial_grid(3.0, 64);
  const CheckReport rep = wvc::check_riccati(m, 0.0, 0.0, grid);
  CHECK(rep.pass);
  CHECK(rep.check_name == "riccati");
  CHECK(notes_contain(rep, "vacuous"));
}

TEST_CASE("pointwise slope check on an active set") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const std::vector<double> grid = wvc::radial_grid(3.0, 128);
  const CheckReport rep = wvc::check_riccati(m, 0.0, 0.0, grid);
  CHECK(rep.pass);
  CHECK(notes_contain(rep, "active points"));
  CHECK(rep.margin == doctest::Approx(rep.rhs - rep.lhs).epsilon(1e-12));
  CHECK(rep.parameters.at("n") == 3.0);
  CHECK(rep.parameters.at("lambda") == 0.0);
}

TEST_CASE("pointwise slope check skips an exact model match") {
  // Against its own curvature the hyperbolic space has no excess at all.
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const std::vector<double> grid = wvc::radial_grid(3.0, 64);
  const CheckReport rep = wvc::check_riccati(m, -1.0, 0.0, grid);
  CHECK(rep.pass);
  CHECK(notes_contain(rep, "vacuous"));
}

TEST_CASE("pointwise slope check on a perturbed warp") {
  const RadialManifold m = make_manifold("perturbed", {{"epsilon", 0.02}});
  const std::vector<double> grid = wvc::radial_grid(2.0, 128);
  const CheckReport rep = wvc::check_riccati(m, 0.0, 0.0, grid);
  CHECK(rep.pass);
  CHECK(notes_contain(rep, "active points"));
}

TEST_CASE("along-ray estimate with curvature excess only") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const CheckReport rep =
      wvc::check_integral_estimate(m, 0.0, 0.0, 1.75, 1.5);
  CHECK(rep.pass);
  CHECK(rep.lhs > 0.0);
  CHECK(rep.margin >= 0.0);
}

TEST_CASE("along-ray estimate is exactly zero on the matching model") {
  const RadialManifold m = make_manifold("euclidean");
  const CheckReport rep = wvc::check_integral_estimate(m, 0.0, 0.0, 2.0, 1.0);
  CHECK(rep.pass);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs == 0.0);
}

TEST_CASE("along-ray estimate with a damping weight") {
  // Inside R = 2 the gaussian slope r/2 never exceeds a = 1, so every
  // excess quantity vanishes.
  const RadialManifold soliton =
      make_manifold("gaussian_soliton", {{"n", 4}});
  const CheckReport zero =
      wvc::check_integral_estimate(soliton, 0.0, 1.0, 2.5, 2.0);
  CHECK(zero.pass);
  CHECK(zero.lhs == 0.0);

  // With the threshold at zero the slope contributes on the right only.
  const RadialManifold bounded = make_manifold("bounded_weight", {{"b", 0.5}});
  const CheckReport rep =
      wvc::check_integral_estimate(bounded, -1.0, 0.0, 2.0, 2.0);
  CHECK(rep.pass);
  CHECK(rep.lhs == 0.0);
  CHECK(rep.rhs > 0.0);
}

TEST_CASE("along-ray estimate parameter window") {
  const RadialManifold m = make_manifold("euclidean");
  check_throws_with("requires p > n/2", [&] {
    wvc::check_integral_estimate(m, 0.0, 0.0, 1.5, 1.0);
  });
  check_throws_with("requires p < n", [&] {
    wvc::check_integral_estimate(m, 0.0, 0.0, 3.0, 1.0);
  });
  check_throws_with("requires a >= 0", [&] {
    wvc::check_integral_estimate(m, 0.0, -0.5, 2.0, 1.0);
  });
  check_throws_with("requires 0 < R <= r_max", [&] {
    wvc::check_integral_estimate(m, 0.0, 0.0, 2.0, 0.0);
  });
  const RadialManifold cap = make_manifold("sphere", {{"r_max", 2.0}});
  check_throws_with("requires R <= pi/(2 sqrt(lambda))", [&] {
    wvc::check_integral_estimate(cap, 1.0, 0.0, 2.0, 1.8);
  });
}

TEST_CASE("shell-sum bound passes with the computed growth constant") {
  const RadialManifold m = make_manifold("gaussian_soliton");
  const CheckReport rep =
      wvc::check_dyadic_bound(m, 0.0, 2.0, 8.0, 3.0, 1.0);
  CHECK(rep.pass);
  CHECK(rep.lhs > 0.0);
  CHECK(notes_contain(rep, "shell integral"));
  CHECK(rep.parameters.at("kappa") > 0.0);
  CHECK(rep.parameters.at("s") == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("shell-sum bound with a supplied growth constant") {
  const RadialManifold m = make_manifold("gaussian_soliton");
  const CheckReport ok =
      wvc::check_dyadic_bound(m, 0.0, 2.0, 8.0, 3.0, 1.0, 4.0 * kPi / 3.0);
  CHECK(ok.pass);
  // A growth constant far below the true volume growth must be caught.
  const CheckReport bad =
      wvc::check_dyadic_bound(m, 0.0, 2.0, 8.0, 3.0, 1.0, 1e-6);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("shell-sum bound on a blended linear weight") {
  const RadialManifold m = make_manifold("linear_weight");
  const CheckReport rep =
      wvc::check_dyadic_bound(m, 0.5, 2.0, 7.0, 3.0, 2.0);
  CHECK(rep.pass);
}

TEST_CASE("shell-sum bound parameter window") {
  const RadialManifold m = make_manifold("euclidean");
  check_throws_with("requires p > 0", [&] {
    wvc::check_dyadic_bound(m, 0.0, 0.0, 8.0, 3.0, 1.0);
  });
  check_throws_with("requires p < l", [&] {
    wvc::check_dyadic_bound(m, 0.0, 3.0, 50.0, 3.0, 1.0);
  });
  check_throws_with("requires q > p l/(l - p)", [&] {
    wvc::check_dyadic_bound(m, 0.0, 2.0, 6.0, 3.0, 1.0);
  });
  check_throws_with("requires a >= 0", [&] {
    wvc::check_dyadic_bound(m, -0.1, 2.0, 8.0, 3.0, 1.0);
  });
  check_throws_with("requires 0 < R <= r_max", [&] {
    wvc::check_dyadic_bound(m, 0.0, 2.0, 8.0, 3.0, 11.0);
  });
}

TEST_CASE("norm estimate for the excess") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const CheckReport rep =
      wvc::check_psi_lp(m, 0.0, 0.0, 1.75, 20.0, 3.0, 1.0);
  CHECK(rep.pass);
  CHECK(rep.lhs > 0.0);
  CHECK(notes_contain(rep, "norm coefficient"));
  CHECK(notes_contain(rep, "non-decreasing in R"));
  CHECK(rep.parameters.at("kappa") > 0.0);
}

TEST_CASE("norm estimate with damping and discount") {
  const RadialManifold m = make_manifold("gaussian_soliton", {{"n", 4}});
  const CheckReport rep =
      wvc::check_psi_lp(m, 0.0, 0.5, 2.2, 30.0, 4.0, 2.0);
  CHECK(rep.pass);
  CHECK(rep.lhs == 0.0);
}

TEST_CASE("norm estimate rejections") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  // Supplying the growth constant isolates this check's own radius guard.
  check_throws_with("check_psi_lp: requires R <= r_max", [&] {
    wvc::check_psi_lp(m, 0.0, 0.0, 1.75, 20.0, 3.0, 11.0, 5.0);
  });
  check_throws_with("requires p > n/2", [&] {
    wvc::check_psi_lp(m, 0.0, 0.0, 1.4, 20.0, 3.0, 1.0, 5.0);
  });
}

TEST_CASE("ratio derivative vanishes on the matching model") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const CheckReport rep = wvc::check_ratio_derivative(m, -1.0, 0.0, 1.0);
  CHECK(rep.pass);
  CHECK(std::abs(rep.lhs) < 1e-6);
  CHECK(rep.rhs == 0.0);
}

TEST_CASE("ratio derivative under curvature excess") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const CheckReport rep = wvc::check_ratio_derivative(m, 0.0, 0.0, 1.0);
  CHECK(rep.pass);
  // Hyperbolic volume outgrows the flat model, so the true slope is
  // positive and the psi integral has to pay for it.
  CHECK(rep.lhs > 0.0);
  CHECK(rep.rhs > rep.lhs);
}

TEST_CASE("ratio derivative with discount only") {
  // The gaussian slope stays below threshold plus discount, so the bound
  // degenerates to plain monotonicity of the discounted ratio.
  const RadialManifold m = make_manifold("gaussian_soliton");
  const CheckReport rep = wvc::check_ratio_derivative(m, 0.0, 0.25, 1.5);
  CHECK(rep.pass);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.lhs < 0.0);
}

TEST_CASE("ratio derivative stencil guards") {
  const RadialManifold m = make_manifold("euclidean");
  check_throws_with("requires R > h", [&] {
    wvc::check_ratio_derivative(m, 0.0, 0.0, 1e-5);
  });
  check_throws_with("requires R + h <= r_max", [&] {
    wvc::check_ratio_derivative(m, 0.0, 0.0, 10.0);
  });
  const RadialManifold cap = make_manifold("sphere", {{"r_max", 2.0}});
  check_throws_with("requires R + h <= pi/(2 sqrt(lambda))", [&] {
    wvc::check_ratio_derivative(cap, 1.0, 0.0, 1.57);
  });
  check_throws_with("requires a >= 0", [&] {
    wvc::check_ratio_derivative(m, 0.0, -1.0, 1.0);
  });
}

TEST_CASE("reduced slope inequality at the flat baseline") {
  const RadialManifold m = make_manifold("euclidean");
  const CheckReport rep =
      wvc::check_ratio_derivative_reduced(m, 0.0, 0.0, 2.0, 1.0);
  CHECK(rep.pass);
  CHECK(std::abs(rep.lhs) < 1e-5);
  CHECK(rep.rhs == 0.0);
}

TEST_CASE("reduced slope inequality with curvature excess") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 2}});
  const CheckReport rep =
      wvc::check_ratio_derivative_reduced(m, 0.0, 0.0, 1.5, 1.0);
  CHECK(rep.pass);
  CHECK(rep.lhs > 0.0);
}

TEST_CASE("reduced slope inequality on the quarter sphere") {
  const RadialManifold m = make_manifold("sphere", {{"r_max", 2.0}});
  const CheckReport rep =
      wvc::check_ratio_derivative_reduced(m, 1.0, 0.0, 2.0, kPi / 4.0);
  CHECK(rep.pass);
  CHECK(std::abs(rep.lhs) < 1e-5);
}

TEST_CASE("reduced slope inequality guards") {
  const RadialManifold m = make_manifold("euclidean");
  check_throws_with("requires p >= 1/2", [&] {
    wvc::check_ratio_derivative_reduced(m, 0.0, 0.0, 0.4, 1.0);
  });
  check_throws_with("requires a >= 0", [&] {
    wvc::check_ratio_derivative_reduced(m, 0.0, -0.2, 2.0, 1.0);
  });
}

TEST_CASE("integrated comparison at the flat baseline") {
  const RadialManifold m = make_manifold("euclidean");
  const CheckReport rep =
      wvc::check_main_theorem(m, 0.0, 0.0, 2.0, 8.0, 3.0, 0.25, 1.0, 2.0);
  CHECK(rep.pass);
  CHECK(std::abs(rep.lhs) < 1e-9);
  CHECK(rep.rhs == 0.0);
  CHECK(rep.parameters.at("kappa") ==
        doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-8));
  CHECK(notes_contain(rep, "scaled-constant probe"));
  CHECK_FALSE(notes_contain(rep, "UNBOUNDED"));
}

TEST_CASE("integrated comparison sees an exact model match") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const CheckReport rep =
      wvc::check_main_theorem(m, -1.0, 0.0, 2.0, 8.0, 3.0, 0.25, 1.0, 1.5);
  CHECK(rep.pass);
  CHECK(std::abs(rep.lhs) < 1e-8);
  // The defect integrands are pure rounding noise here, but the 1/(2p)-th
  // root amplifies that noise, so the bound lands near 1e-7 instead of at
  // an exact zero.
  CHECK(rep.rhs >= 0.0);
  CHECK(rep.rhs < 1e-5);
}

TEST_CASE("integrated comparison with damping weight and discount") {
  const RadialManifold m = make_manifold("gaussian_soliton", {{"n", 4}});
  const CheckReport rep =
      wvc::check_main_theorem(m, 0.0, 0.5, 2.5, 40.0, 4.0, 0.25, 1.5, 2.0);
  CHECK(rep.pass);
  CHECK(rep.margin >= 0.0);
}

TEST_CASE("integrated comparison guards") {
  const RadialManifold m = make_manifold("euclidean");
  check_throws_with("requires 0 < r <= R <= r_max", [&] {
    wvc::check_main_theorem(m, 0.0, 0.0, 2.0, 8.0, 3.0, 0.0, 1.0, 2.0);
  });
  check_throws_with("requires R <= R0 <= r_max", [&] {
    wvc::check_main_theorem(m, 0.0, 0.0, 2.0, 8.0, 3.0, 0.25, 1.0, 0.5);
  });
  check_throws_with("requires p > n/2", [&] {
    wvc::check_main_theorem(m, 0.0, 0.0, 1.2, 8.0, 3.0, 0.25, 1.0, 2.0);
  });
}

TEST_CASE("unweighted specialization and its scaling fit") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const CheckReport rep = wvc::check_petersen_wei(m, 0.0, 2.0, 0.1, 1.0);
  CHECK(rep.pass);
  CHECK(notes_contain(rep, "small-R constant slope"));
  CHECK_FALSE(notes_contain(rep, "MISMATCH"));

  const RadialManifold bump = make_manifold("perturbed", {{"epsilon", 0.02}});
  CHECK(wvc::check_petersen_wei(bump, 0.0, 2.0, 0.1, 1.0).pass);
}

TEST_CASE("unweighted specialization rejections") {
  check_throws_with("requires f = 0", [&] {
    wvc::check_petersen_wei(make_manifold("gaussian_soliton"), 0.0, 2.0, 0.1,
                            1.0);
  });
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  check_throws_with("requires lambda <= 0", [&] {
    wvc::check_petersen_wei(m, 0.5, 2.0, 0.1, 1.0);
  });
  check_throws_with("requires p > n/2", [&] {
    wvc::check_petersen_wei(m, 0.0, 1.4, 0.1, 1.0);
  });
}

TEST_CASE("gradient-bound remark consumes no growth data") {
  const RadialManifold m = make_manifold("bounded_weight", {{"b", 0.5}});
  const CheckReport rep =
      wvc::check_bounded_gradient_remark(m, -1.0, 0.5, 2.0, 0.2, 1.0);
  CHECK(rep.pass);
  CHECK(notes_contain(rep, "no growth constant consumed"));
  CHECK(rep.parameters.count("kappa") == 0);
}

TEST_CASE("gradient-bound remark at the flat baseline") {
  const RadialManifold m = make_manifold("euclidean");
  const CheckReport rep =
      wvc::check_bounded_gradient_remark(m, 0.0, 0.0, 2.0, 0.5, 1.0);
  CHECK(rep.pass);
  CHECK(std::abs(rep.lhs) < 1e-9);
}

TEST_CASE("gradient-bound remark enforces the bound") {
  check_throws_with("requires sup|f'| <= a", [&] {
    wvc::check_bounded_gradient_remark(
        make_manifold("bounded_weight", {{"b", 0.5}}), 0.0, 0.3, 2.0, 0.2,
        1.0);
  });
  check_throws_with("requires sup|f'| <= a", [&] {
    wvc::check_bounded_gradient_remark(make_manifold("gaussian_soliton"),
                                       0.0, 1.0, 2.0, 0.2, 1.0);
  });
  const RadialManifold m = make_manifold("euclidean");
  check_throws_with("requires a >= 0", [&] {
    wvc::check_bounded_gradient_remark(m, 0.0, -0.1, 2.0, 0.2, 1.0);
  });
  check_throws_with("requires p > n/2", [&] {
    wvc::check_bounded_gradient_remark(m, 0.0, 0.0, 1.2, 0.2, 1.0);
  });
}

TEST_CASE("volume ratio against the matching model stays at one") {
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const wvc::ModelSpace model(3, -1.0);
  for (const double R : {0.5, 1.0, 2.0}) {
    const double ratio = wvc::weighted_ball_volume(m, R) /
                         wvc::ball_volume_model(model, R);
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("volume ratio against a stiffer model is monotone") {
  // Classical comparison run in reverse: hyperbolic volume over flat model
  // volume grows with the radius.
  const RadialManifold m = make_manifold("hyperbolic", {{"n", 3}});
  const wvc::ModelSpace flat(3, 0.0);
  double prev = 1.0;
  for (const double R : {0.5, 1.0, 1.5, 2.0}) {
    const double ratio =
        wvc::weighted_ball_volume(m, R) / wvc::ball_volume_model(flat, R);
    CHECK(ratio >= prev * (1.0 - 1e-12));
    prev = ratio;
  }
}
