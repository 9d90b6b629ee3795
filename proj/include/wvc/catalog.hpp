#pragma once

#include <map>
#include <string>
#include <vector>

#include "wvc/radial_manifold.hpp"

namespace wvc {

// Named manifolds used by the CLI, the sweep driver, and the tests. Every
// entry is rotationally symmetric with an exactly known pole expansion, so
// the factory can hand RadialManifold closed-form derivatives instead of
// relying on finite differences.
//
//   euclidean            phi = r,                    f = 0
//   hyperbolic(k)        phi = sinh(sqrt(k) r)/sqrt(k), f = 0
//   sphere(k)            phi = sin(sqrt(k) r)/sqrt(k),  f = 0
//   gaussian_soliton(c)  phi = r,                    f = c r^2
//   bounded_weight(b)    phi = r,                    f = b log(1 + r^2)
//   perturbed(epsilon)   phi = r + epsilon r^3,      f = 0
//   linear_weight(s)     phi = r,                    f = s r, smoothed on
//                        [0, 0.1] so that f'(0) = 0 and f is C^2
//
// Parameters are passed by name ("k", "c", "b", "epsilon", "s"); every entry
// also accepts "n" (dimension, default 3) and "r_max" (default 10, except the
// sphere whose default is the quarter period pi/(2 sqrt(k))). Unknown keys
// are rejected.

std::vector<std::string> catalog_names();

RadialManifold make_manifold(const std::string& name,
                             const std::map<std::string, double>& params = {});

// Stable display label, e.g. "hyperbolic(k=1)". Dimension and r_max are not
// part of the label; reports carry them as separate columns.
std::string manifold_label(const std::string& name,
                           const std::map<std::string, double>& params);

}  // namespace wvc
