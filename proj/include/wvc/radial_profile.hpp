#pragma once

#include <functional>
#include <string>

namespace wvc {

// Scalar function of the radius together with its first two derivatives in
// closed form. Consumers trust d1/d2; validate_profile_derivatives is the
// guard that keeps a hand-written derivative honest.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::string description;
};

/**
 * Cross-checks d1 against central differences of value, and d2 against
 * central differences of d1, at sample_count pseudo-random radii in
 * (lo, hi). Throws std::invalid_argument naming the first failing radius
 * when a relative mismatch exceeds rel_tol.
 */
void validate_profile_derivatives(const RadialProfile& p, double lo, double hi,
                                  int sample_count = 16, double rel_tol = 1e-6,
                                  unsigned seed = 0x7261644c);

}  // namespace wvc
