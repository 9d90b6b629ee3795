#include "wvc/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace wvc {

namespace {

// Pops recognized keys so that finish() can flag leftovers as unknown.
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, double>& params)
      : params_(params) {}

  double take(const std::string& key, double fallback) {
    const auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    const double v = it->second;
    params_.erase(it);
    return v;
  }

  void finish(const std::string& name) const {
    if (!params_.empty()) {
      throw std::invalid_argument("make_manifold: unknown parameter \"" +
                                  params_.begin()->first + "\" for \"" + name +
                                  "\"");
    }
  }

 private:
  std::map<std::string, double> params_;
};

int read_dimension(ParamReader& reader) {
  const double raw = reader.take("n", 3.0);
  if (!(raw >= 2.0) || raw != std::floor(raw) || raw > 64.0) {
    throw std::invalid_argument(
        "make_manifold: requires integer dimension 2 <= n <= 64");
  }
  return static_cast<int>(raw);
}

RadialProfile linear_warp() {
  return RadialProfile{[](double r) { return r; }, [](double) { return 1.0; },
                       [](double) { return 0.0; }, "phi(r) = r"};
}

RadialProfile zero_weight() {
  return RadialProfile{[](double) { return 0.0; }, [](double) { return 0.0; },
                       [](double) { return 0.0; }, "f = 0"};
}

std::string format_param(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"euclidean",      "hyperbolic", "sphere",       "gaussian_soliton",
          "bounded_weight", "perturbed",  "linear_weight"};
}

RadialManifold make_manifold(const std::string& name,
                             const std::map<std::string, double>& params) {
  ParamReader reader(params);
  const int n = read_dimension(reader);

  if (name == "euclidean") {
    const double r_max = reader.take("r_max", 10.0);
    reader.finish(name);
    return RadialManifold(name, n, linear_warp(), zero_weight(), r_max,
                          PoleSeries{0.0, 0.0, 0.0});
  }

  if (name == "hyperbolic") {
    const double k = reader.take("k", 1.0);
    const double r_max = reader.take("r_max", 10.0);
    reader.finish(name);
    if (!(k > 0.0)) {
      throw std::invalid_argument("make_manifold: hyperbolic requires k > 0");
    }
    const double rk = std::sqrt(k);
    RadialProfile warp{
        [rk](double r) { return std::sinh(rk * r) / rk; },
        [rk](double r) { return std::cosh(rk * r); },
        [rk](double r) { return rk * std::sinh(rk * r); },
        "phi(r) = sinh(sqrt(k) r)/sqrt(k)"};
    return RadialManifold(name, n, std::move(warp), zero_weight(), r_max,
                          PoleSeries{0.0, k / 6.0, 0.0});
  }

  if (name == "sphere") {
    const double k = reader.take("k", 1.0);
    if (!(k > 0.0)) {
      throw std::invalid_argument("make_manifold: sphere requires k > 0");
    }
    const double rk = std::sqrt(k);
    const double r_max = reader.take("r_max", std::numbers::pi / (2.0 * rk));
    reader.finish(name);
    if (!(r_max < std::numbers::pi / rk)) {
      throw std::invalid_argument(
          "make_manifold: sphere requires r_max < pi/sqrt(k)");
    }
    RadialProfile warp{
        [rk](double r) { return std::sin(rk * r) / rk; },
        [rk](double r) { return std::cos(rk * r); },
        [rk](double r) { return -rk * std::sin(rk * r); },
        "phi(r) = sin(sqrt(k) r)/sqrt(k)"};
    return RadialManifold(name, n, std::move(warp), zero_weight(), r_max,
                          PoleSeries{0.0, -k / 6.0, 0.0});
  }

  if (name == "gaussian_soliton") {
    const double c = reader.take("c", 0.25);
    const double r_max = reader.take("r_max", 10.0);
    reader.finish(name);
    if (!(c > 0.0)) {
      throw std::invalid_argument(
          "make_manifold: gaussian_soliton requires c > 0");
    }
    RadialProfile weight{
        [c](double r) { return c * r * r; }, [c](double r) { return 2.0 * c * r; },
        [c](double) { return 2.0 * c; }, "f(r) = c r^2"};
    return RadialManifold(name, n, linear_warp(), std::move(weight), r_max,
                          PoleSeries{0.0, 0.0, 0.0});
  }

  if (name == "bounded_weight") {
    const double b = reader.take("b", 0.5);
    const double r_max = reader.take("r_max", 10.0);
    reader.finish(name);
    if (!(b >= 0.0)) {
      throw std::invalid_argument(
          "make_manifold: bounded_weight requires b >= 0");
    }
    RadialProfile weight{
        [b](double r) { return b * std::log1p(r * r); },
        [b](double r) { return 2.0 * b * r / (1.0 + r * r); },
        [b](double r) {
          const double d = 1.0 + r * r;
          return 2.0 * b * (1.0 - r * r) / (d * d);
        },
        "f(r) = b log(1 + r^2)"};
    return RadialManifold(name, n, linear_warp(), std::move(weight), r_max,
                          PoleSeries{0.0, 0.0, 0.0});
  }

  if (name == "perturbed") {
    const double eps = reader.take("epsilon", 0.02);
    const double r_max = reader.take("r_max", 10.0);
    reader.finish(name);
    if (!(eps >= 0.0)) {
      throw std::invalid_argument(
          "make_manifold: perturbed requires epsilon >= 0");
    }
    RadialProfile warp{
        [eps](double r) { return r + eps * r * r * r; },
        [eps](double r) { return 1.0 + 3.0 * eps * r * r; },
        [eps](double r) { return 6.0 * eps * r; },
        "phi(r) = r + epsilon r^3"};
    return RadialManifold(name, n, std::move(warp), zero_weight(), r_max,
                          PoleSeries{0.0, eps, 0.0});
  }

  if (name == "linear_weight") {
    const double s = reader.take("s", 0.5);
    const double r_max = reader.take("r_max", 10.0);
    reader.finish(name);
    if (!(s >= 0.0)) {
      throw std::invalid_argument(
          "make_manifold: linear_weight requires s >= 0");
    }
    // Quartic blend on [0, delta] keeps f' (0) = 0 and matches f = s r with
    // matching first and second derivatives at delta.
    const double delta = 0.1;
    RadialProfile weight{
        [s, delta](double r) {
          if (r >= delta) return s * r;
          const double t = r / delta;
          return s * r * t * (3.0 - 3.0 * t + t * t);
        },
        [s, delta](double r) {
          if (r >= delta) return s;
          const double t = r / delta;
          return s * t * (6.0 - 9.0 * t + 4.0 * t * t);
        },
        [s, delta](double r) {
          if (r >= delta) return 0.0;
          const double t = r / delta;
          return s * (6.0 - 18.0 * t + 12.0 * t * t) / delta;
        },
        "f(r) = s r, blended to zero slope at the pole"};
    return RadialManifold(name, n, linear_warp(), std::move(weight), r_max,
                          PoleSeries{0.0, 0.0, 0.0});
  }

  throw std::invalid_argument("make_manifold: unknown manifold \"" + name +
                              "\"");
}

std::string manifold_label(const std::string& name,
                           const std::map<std::string, double>& params) {
  ParamReader reader(params);
  reader.take("n", 3.0);
  reader.take("r_max", 0.0);
  if (name == "euclidean") {
    reader.finish(name);
    return name;
  }
  std::string key;
  double fallback = 0.0;
  if (name == "hyperbolic" || name == "sphere") {
    key = "k";
    fallback = 1.0;
  } else if (name == "gaussian_soliton") {
    key = "c";
    fallback = 0.25;
  } else if (name == "bounded_weight") {
    key = "b";
    fallback = 0.5;
  } else if (name == "perturbed") {
    key = "epsilon";
    fallback = 0.02;
  } else if (name == "linear_weight") {
    key = "s";
    fallback = 0.5;
  } else {
    throw std::invalid_argument("manifold_label: unknown manifold \"" + name +
                                "\"");
  }
  const double v = reader.take(key, fallback);
  reader.finish(name);
  return name + "(" + key + "=" + format_param(v) + ")";
}

}  // namespace wvc
