#pragma once

#include <map>
#include <string>

namespace wvc {

/**
 * Tolerance policy for inequality checks.
 *
 * A comparison `lhs <= rhs` passes iff
 *     lhs <= rhs + abs_tol + rel_tol * |rhs| + fd_budget
 * where fd_budget is zero unless a finite difference supplies the LHS, in
 * which case it is fd_rel * max(|lhs|, |rhs|) plus the propagated evaluation
 * noise (recorded in Resolution::fd_error).
 */
struct Tolerances {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  double fd_rel = 1e-4;
  double monotone_tol = 1e-10;  // slack for grid monotonicity assertions
};

// How a reported number was obtained: grid resolution, tolerances in force,
// and the numerical error budget actually consumed.
struct Resolution {
  long grid_points = 0;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  double quad_error = 0.0;  // sum of quadrature error estimates feeding lhs/rhs
  double fd_error = 0.0;    // finite-difference error budget (0 when no FD)
  std::string notes;
};

struct CheckReport {
  std::string check_name;
  std::string manifold;
  std::map<std::string, double> parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs at the worst tested point
  double worst_lo = 0.0;
  double worst_hi = 0.0;  // == worst_lo when the worst locus is a point
  bool pass = false;
  Resolution resolution;
};

}  // namespace wvc
