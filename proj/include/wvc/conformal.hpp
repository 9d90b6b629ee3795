#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wvc/quadrature.hpp"
#include "wvc/radial_manifold.hpp"
#include "wvc/report.hpp"

namespace wvc {

// Radial and tangential components of a tensor identity's defect, measured
// against g-unit vectors.
struct ConformalResidual {
  double radial;
  double tangential;
};

/**
 * A rotationally symmetric metric g together with a radial conformal factor
 * u, describing g~ = e^{2u} g.
 *
 * The conformal metric is again a warped product in its own arc-length
 * coordinate
 *
 *   r~(r) = integral_0^r e^{u(t)} dt,   phi~(r~) = e^{u(r)} phi(r),
 *
 * and this class owns that change of coordinates: a cached cumulative table
 * of r~ plus a Newton inversion r(r~). Both presentations of the conformal
 * metric are built once at construction:
 *
 *   induced_manifold()          g~ as a warped product, zero weight
 *   induced_weighted_manifold() g~ with the weight f^ = (n-2) u, the choice
 *                               that cancels the Hessian term in the
 *                               conformal transformation of Ricci
 *
 * Derivatives transform by the chain rule d/dr~ = e^{-u} d/dr:
 *
 *   dphi~/dr~   = u' phi + phi'
 *   d2phi~/dr~2 = e^{-u} (u'' phi + u' phi' + phi'')
 *   df^/dr~     = (n-2) e^{-u} u'
 *   d2f^/dr~2   = (n-2) e^{-2u} (u'' - u'^2)
 *
 * The factor must satisfy u'(0) = 0 so that f^ is an admissible weight; the
 * base's own weight plays no role here, only its metric.
 */
class ConformalPair {
 public:
  ConformalPair(RadialManifold base, RadialProfile factor);

  const RadialManifold& base() const { return base_; }
  const RadialProfile& factor() const { return factor_; }

  // r~(r) for 0 <= r <= base r_max.
  double induced_radius(double r) const;
  // Inverse map r(r~); exact 0 at r~ = 0.
  double base_radius(double r_tilde) const;
  double induced_r_max() const;

  const RadialManifold& induced_manifold() const { return *induced_plain_; }
  const RadialManifold& induced_weighted_manifold() const {
    return *induced_weighted_;
  }

 private:
  RadialManifold base_;
  RadialProfile factor_;
  std::shared_ptr<const class RadialCoordinateMap> map_;
  std::shared_ptr<const RadialManifold> induced_plain_;
  std::shared_ptr<const RadialManifold> induced_weighted_;
};

/**
 * Defect of the conformal transformation law of the Ricci tensor,
 *
 *   Ric(g~) + (n-2) Hess_g u
 *     = Ric(g) - (Delta_g u) g + (n-2) du (x) du - (n-2) |grad u|_g^2 g,
 *
 * at radius r, componentwise against g-unit vectors. The left side is
 * evaluated through the induced warped-product chart (so a nonzero residual
 * flags the reparameterization machinery, not algebra); the right side comes
 * from the base profiles directly. Both components vanish up to rounding for
 * any admissible factor.
 */
ConformalResidual conformal_ricci_residual(const ConformalPair& pair,
                                           double r);

/**
 * Defect of the conformal transformation law of the Hessian,
 *
 *   Hess_{g~}(u) = Hess_g(u) - 2 du (x) du + |grad u|_g^2 g,
 *
 * measured the same way as conformal_ricci_residual.
 */
ConformalResidual conformal_hessian_residual(const ConformalPair& pair,
                                             double r);

// Coefficient of the gradient term in the conformal lower bound below:
// (n-3)_+ / (n-2)^2, and 0 for n <= 3 where the gradient term is not needed.
double conformal_gradient_coefficient(int n);

/**
 * Checks the curvature conclusion of the conformal change g~ = e^{2u} g with
 * weight f^ = (n-2) u: at every grid radius, both eigenvalues of
 * Ric_{f^}(g~) satisfy
 *
 *   Ric_{f^}(g~) >= -(rho0 + A0 |grad f^|_{g~}^2) g~.
 *
 * The hypothesis Delta_g u + |grad u|_g^2 <= rho0 is verified on the grid
 * first; if it fails anywhere the input is rejected (std::invalid_argument
 * naming the worst radius) rather than reported as a failed check. rho0 must
 * be >= 0.
 *
 * Combining the two transformation identities gives the exact relation
 *
 *   Ric_{f^}(g~) = Ric(g) - (Delta_g u) g - (n-2) du (x) du,
 *
 * so with A0 = conformal_gradient_coefficient(n), a base with Ric(g) >= 0,
 * and a factor u >= 0 the conclusion is a theorem and a failure flags the
 * implementation; for negatively curved bases the caller must fold the
 * curvature defect into rho0 (hyperbolic(1) with factor zero passes exactly
 * at rho0 = n-1). Smaller A0 can legitimately fail.
 *
 * The left side is evaluated through the induced weighted chart, exercising
 * the same machinery the residual checks validate. Grid radii are base radii
 * in (0, r_max].
 */
CheckReport conformal_be_lower_bound(const ConformalPair& pair, double rho0,
                                     double A0, std::span<const double> grid,
                                     const Tolerances& tol = {});

/**
 * Both sides of the conformal volume identity
 *
 *   vol_{g~} B~(r~(r)) = integral_{B(r)} e^{n u} dvol_g,
 *
 * returned as (induced chart value, direct integral). Agreement to relative
 * 1e-8 is part of the conformal acceptance gate.
 */
std::pair<double, double> conformal_volume_pair(
    const ConformalPair& pair, double r, const QuadratureOptions& opt = {});

// Named radial conformal factors used by sweeps and tests. Every entry has
// u'(0) = 0 and closed-form derivatives:
//   zero            u = 0
//   constant        u = c
//   log_bump        u = c log(1 + r^2)
//   rational_bump   u = c / (1 + r^2)
std::vector<std::string> conformal_factor_names();
RadialProfile make_conformal_factor(const std::string& name, double c);

}  // namespace wvc
