#include "wvc/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wvc/model_space.hpp"

namespace wvc {

/**
 * The arc-length change of coordinates r~(r) = integral_0^r e^{u(t)} dt and
 * its inverse. A cumulative table over a uniform grid keeps every forward
 * evaluation down to one short quadrature, and brackets the Newton iteration
 * of the inverse.
 */
class RadialCoordinateMap {
 public:
  RadialCoordinateMap(RadialProfile factor, double r_max)
      : factor_(std::move(factor)), r_max_(r_max) {
    grid_r_.resize(kSegments + 1);
    grid_rt_.resize(kSegments + 1);
    grid_r_[0] = 0.0;
    grid_rt_[0] = 0.0;
    double acc = 0.0;
    for (int i = 1; i <= kSegments; ++i) {
      grid_r_[i] = r_max_ * i / kSegments;
      acc += integrate([this](double t) { return std::exp(factor_.value(t)); },
                       grid_r_[i - 1], grid_r_[i], segment_options())
                 .value;
      grid_rt_[i] = acc;
    }
  }

  double r_max() const { return r_max_; }
  double rt_max() const { return grid_rt_.back(); }

  double forward(double r) const {
    if (r <= 0.0) return 0.0;
    const double x = r / r_max_ * kSegments;
    int i = std::min(static_cast<int>(x), kSegments - 1);
    if (grid_r_[i] > r) i = std::max(0, i - 1);
    if (grid_r_[i] == r) return grid_rt_[i];
    return grid_rt_[i] +
           integrate([this](double t) { return std::exp(factor_.value(t)); },
                     grid_r_[i], r, segment_options())
               .value;
  }

  double inverse(double rt) const {
    if (rt <= 0.0) return 0.0;
    if (rt >= grid_rt_.back()) return r_max_;
    const auto it = std::upper_bound(grid_rt_.begin(), grid_rt_.end(), rt);
    const int i = static_cast<int>(it - grid_rt_.begin()) - 1;
    double lo = grid_r_[i];
    double hi = grid_r_[i + 1];
    const double t = (rt - grid_rt_[i]) / (grid_rt_[i + 1] - grid_rt_[i]);
    double r = lo + t * (hi - lo);
    for (int iter = 0; iter < 100; ++iter) {
      const double defect = forward(r) - rt;
      if (std::abs(defect) <= 1e-15 * std::max(1.0, rt)) break;
      if (defect > 0.0) {
        hi = r;
      } else {
        lo = r;
      }
      double next = r - defect / std::exp(factor_.value(r));
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const bool converged =
          std::abs(next - r) <= 4e-16 * std::max(1.0, std::abs(r));
      r = next;
      if (converged) break;
    }
    return r;
  }

 private:
  static constexpr int kSegments = 512;

  static QuadratureOptions segment_options() {
    QuadratureOptions opt;
    opt.rel_tol = 1e-12;
    return opt;
  }

  RadialProfile factor_;
  double r_max_;
  std::vector<double> grid_r_;
  std::vector<double> grid_rt_;
};

namespace {

RadialProfile zero_weight_profile() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; },
          [](double) { return 0.0; }, "zero weight"};
}

struct InducedContext {
  std::shared_ptr<const RadialManifold> base;
  RadialProfile factor;
  std::shared_ptr<const RadialCoordinateMap> map;
};

// phi~(r~) = e^{u} phi with d/dr~ = e^{-u} d/dr applied twice.
RadialProfile induced_warp(const InducedContext& ctx) {
  RadialProfile p;
  p.value = [ctx](double rt) {
    const double r = ctx.map->inverse(rt);
    return std::exp(ctx.factor.value(r)) * ctx.base->phi(r);
  };
  p.d1 = [ctx](double rt) {
    const double r = ctx.map->inverse(rt);
    return ctx.factor.d1(r) * ctx.base->phi(r) + ctx.base->phi_d1(r);
  };
  p.d2 = [ctx](double rt) {
    const double r = ctx.map->inverse(rt);
    return std::exp(-ctx.factor.value(r)) *
           (ctx.factor.d2(r) * ctx.base->phi(r) +
            ctx.factor.d1(r) * ctx.base->phi_d1(r) + ctx.base->phi_d2(r));
  };
  p.description = "conformal warp e^u phi in arc length";
  return p;
}

// f^(r~) = (n-2) u with the same chain rule.
RadialProfile induced_weight(const InducedContext& ctx, int n) {
  const double k = n - 2.0;
  RadialProfile p;
  p.value = [ctx, k](double rt) {
    return k * ctx.factor.value(ctx.map->inverse(rt));
  };
  p.d1 = [ctx, k](double rt) {
    const double r = ctx.map->inverse(rt);
    return k * std::exp(-ctx.factor.value(r)) * ctx.factor.d1(r);
  };
  p.d2 = [ctx, k](double rt) {
    const double r = ctx.map->inverse(rt);
    const double u1 = ctx.factor.d1(r);
    return k * std::exp(-2.0 * ctx.factor.value(r)) *
           (ctx.factor.d2(r) - u1 * u1);
  };
  p.description = "conformal weight (n-2) u in arc length";
  return p;
}

void require_base_radius(const ConformalPair& pair, double r,
                         const char* where) {
  if (!(r > 0.0 && r <= pair.base().r_max())) {
    std::ostringstream msg;
    msg << where << ": requires 0 < r <= r_max (r = " << r
        << ", r_max = " << pair.base().r_max() << ")";
    throw std::invalid_argument(msg.str());
  }
}

// Eigenvalues of the unweighted Ricci tensor of the base metric.
RicciEigenvalues base_ricci(const RadialManifold& base, double r) {
  const int n = base.dimension();
  const double phi = base.phi(r);
  const double p1 = base.phi_d1(r);
  const double p2 = base.phi_d2(r);
  return {-(n - 1) * p2 / phi,
          -p2 / phi + (n - 2) * (1.0 - p1 * p1) / (phi * phi)};
}

}  // namespace

ConformalPair::ConformalPair(RadialManifold base, RadialProfile factor)
    : base_(std::move(base)), factor_(std::move(factor)) {
  validate_profile_derivatives(factor_, 0.0, base_.r_max());
  if (std::abs(factor_.d1(0.0)) > 1e-9) {
    throw std::invalid_argument("ConformalPair: requires u'(0) = 0");
  }
  map_ = std::make_shared<const RadialCoordinateMap>(factor_, base_.r_max());

  const InducedContext ctx{std::make_shared<const RadialManifold>(base_),
                           factor_, map_};
  const int n = base_.dimension();
  const double rt_max = map_->rt_max();
  induced_plain_ = std::make_shared<const RadialManifold>(
      base_.name() + " conformal", n, induced_warp(ctx), zero_weight_profile(),
      rt_max);
  induced_weighted_ = std::make_shared<const RadialManifold>(
      base_.name() + " conformal weighted", n, induced_warp(ctx),
      induced_weight(ctx, n), rt_max);
}

double ConformalPair::induced_radius(double r) const {
  if (!(r >= 0.0 && r <= base_.r_max())) {
    throw std::invalid_argument("induced_radius: requires 0 <= r <= r_max");
  }
  return map_->forward(r);
}

double ConformalPair::base_radius(double r_tilde) const {
  if (!(r_tilde >= 0.0 && r_tilde <= map_->rt_max())) {
    throw std::invalid_argument(
        "base_radius: requires 0 <= r~ <= induced_r_max");
  }
  return map_->inverse(r_tilde);
}

double ConformalPair::induced_r_max() const { return map_->rt_max(); }

ConformalResidual conformal_ricci_residual(const ConformalPair& pair,
                                           double r) {
  require_base_radius(pair, r, "conformal_ricci_residual");
  const RadialManifold& base = pair.base();
  const RadialProfile& u = pair.factor();
  const int n = base.dimension();

  const double uv = u.value(r);
  const double u1 = u.d1(r);
  const double u2 = u.d2(r);
  const double phi = base.phi(r);
  const double p1 = base.phi_d1(r);
  const double e2u = std::exp(2.0 * uv);
  const double lap = u2 + (n - 1) * (p1 / phi) * u1;

  const double rt = pair.induced_radius(r);
  const RicciEigenvalues tilde =
      pair.induced_manifold().ricci_f_eigenvalues(rt);
  const RicciEigenvalues plain = base_ricci(base, r);

  // Components against g-unit vectors: a g-unit vector has g~-norm e^u, so
  // the tilde eigenvalues pick up e^{2u}. Radially du (x) du equals
  // |grad u|^2 g and the two gradient terms cancel; tangentially only the
  // |grad u|^2 term survives.
  const double lhs_rad = e2u * tilde.radial + (n - 2) * u2;
  const double rhs_rad = plain.radial - lap;
  const double lhs_tan = e2u * tilde.tangential + (n - 2) * u1 * p1 / phi;
  const double rhs_tan = plain.tangential - lap - (n - 2) * u1 * u1;

  return {std::abs(lhs_rad - rhs_rad), std::abs(lhs_tan - rhs_tan)};
}

ConformalResidual conformal_hessian_residual(const ConformalPair& pair,
                                             double r) {
  require_base_radius(pair, r, "conformal_hessian_residual");
  const RadialManifold& base = pair.base();
  const RadialProfile& u = pair.factor();
  const int n = base.dimension();

  const double u1 = u.d1(r);
  const double u2 = u.d2(r);
  const double phi = base.phi(r);
  const double p1 = base.phi_d1(r);

  // Left side through the induced chart: u as a function of r~ has
  // du/dr~ = e^{-u} u' and d2u/dr~2 = e^{-2u}(u'' - u'^2), both evaluated at
  // the round-tripped base radius; the tangential component uses the
  // induced warp through mean_curvature.
  const double rt = pair.induced_radius(r);
  const double rho = pair.base_radius(rt);
  const double uv_rho = u.value(rho);
  const double u1_rho = u.d1(rho);
  const double u2_rho = u.d2(rho);
  const double e2u = std::exp(2.0 * u.value(r));
  const double hess_rad_tilde =
      std::exp(-2.0 * uv_rho) * (u2_rho - u1_rho * u1_rho);
  const double du_tilde = std::exp(-uv_rho) * u1_rho;
  const double hess_tan_tilde =
      du_tilde * pair.induced_manifold().mean_curvature(rt) / (n - 1);

  const double lhs_rad = e2u * hess_rad_tilde;
  const double rhs_rad = u2 - 2.0 * u1 * u1 + u1 * u1;
  const double lhs_tan = e2u * hess_tan_tilde;
  const double rhs_tan = u1 * p1 / phi + u1 * u1;

  return {std::abs(lhs_rad - rhs_rad), std::abs(lhs_tan - rhs_tan)};
}

double conformal_gradient_coefficient(int n) {
  if (n < 2) {
    throw std::invalid_argument(
        "conformal_gradient_coefficient: requires n >= 2");
  }
  if (n <= 3) return 0.0;
  const double d = n - 2.0;
  return (n - 3.0) / (d * d);
}

CheckReport conformal_be_lower_bound(const ConformalPair& pair, double rho0,
                                     double A0, std::span<const double> grid,
                                     const Tolerances& tol) {
  const RadialManifold& base = pair.base();
  const RadialProfile& u = pair.factor();
  const int n = base.dimension();
  if (!(rho0 >= 0.0)) {
    throw std::invalid_argument("conformal_be_lower_bound: requires rho0 >= 0");
  }
  if (!(A0 >= 0.0)) {
    throw std::invalid_argument("conformal_be_lower_bound: requires A0 >= 0");
  }
  if (grid.empty()) {
    throw std::invalid_argument(
        "conformal_be_lower_bound: requires a nonempty grid");
  }
  for (double r : grid) require_base_radius(pair, r, "conformal_be_lower_bound");

  // Hypothesis sweep first; a violation rejects the input instead of
  // producing a failed report.
  double hyp_worst = -std::numeric_limits<double>::infinity();
  double hyp_worst_r = grid.front();
  for (double r : grid) {
    const double u1 = u.d1(r);
    const double lap = u.d2(r) + (n - 1) * (base.phi_d1(r) / base.phi(r)) * u1;
    const double hyp = lap + u1 * u1;
    if (hyp > hyp_worst) {
      hyp_worst = hyp;
      hyp_worst_r = r;
    }
  }
  if (hyp_worst > rho0 + 1e-12 * std::max(1.0, rho0)) {
    std::ostringstream msg;
    msg << "conformal_be_lower_bound: hypothesis Delta u + |grad u|^2 <= rho0 "
        << "fails at r = " << hyp_worst_r << " (" << hyp_worst << " > " << rho0
        << ")";
    throw std::invalid_argument(msg.str());
  }

  const RadialManifold& tilde = pair.induced_weighted_manifold();
  double min_margin = std::numeric_limits<double>::infinity();
  double worst_r = grid.front();
  double worst_eig = 0.0;
  double worst_bound = 0.0;
  for (double r : grid) {
    const double rt = pair.induced_radius(r);
    const RicciEigenvalues eig = tilde.ricci_f_eigenvalues(rt);
    const double low = std::min(eig.radial, eig.tangential);
    const double df = tilde.f_d1(rt);
    const double bound = -(rho0 + A0 * df * df);
    const double margin = low - bound;
    if (margin < min_margin) {
      min_margin = margin;
      worst_r = r;
      worst_eig = low;
      worst_bound = bound;
    }
  }

  CheckReport rep;
  rep.check_name = "conformal_be_lower_bound";
  rep.manifold = base.name() + " with " + u.description;
  rep.parameters = {{"n", static_cast<double>(n)},
                    {"rho0", rho0},
                    {"A0", A0}};
  rep.lhs = worst_bound;
  rep.rhs = worst_eig;
  rep.margin = min_margin;
  rep.worst_lo = rep.worst_hi = worst_r;
  rep.pass =
      worst_bound <= worst_eig + tol.abs_tol + tol.rel_tol * std::abs(worst_eig);
  rep.resolution.grid_points = static_cast<long>(grid.size());
  rep.resolution.abs_tol = tol.abs_tol;
  rep.resolution.rel_tol = tol.rel_tol;
  {
    std::ostringstream notes;
    notes << "hypothesis margin " << (rho0 - hyp_worst)
          << "; gradient coefficient " << A0;
    rep.resolution.notes = notes.str();
  }
  return rep;
}

std::pair<double, double> conformal_volume_pair(const ConformalPair& pair,
                                                double r,
                                                const QuadratureOptions& opt) {
  require_base_radius(pair, r, "conformal_volume_pair");
  const RadialManifold& base = pair.base();
  const RadialProfile& u = pair.factor();
  const int n = base.dimension();
  const double area = unit_sphere_area(n);

  const double rt = pair.induced_radius(r);
  const RadialManifold& ind = pair.induced_manifold();
  const double induced =
      area * integrate([&ind, n](double t) {
               return std::pow(ind.phi(t), n - 1);
             },
                       0.0, rt, opt)
                 .value;
  const double direct =
      area * integrate([&base, &u, n](double t) {
               return std::exp(n * u.value(t)) * std::pow(base.phi(t), n - 1);
             },
                       0.0, r, opt)
                 .value;
  return {induced, direct};
}

std::vector<std::string> conformal_factor_names() {
  return {"zero", "constant", "log_bump", "rational_bump"};
}

RadialProfile make_conformal_factor(const std::string& name, double c) {
  std::ostringstream label;
  label << name << "(c=" << c << ")";
  if (name == "zero") {
    RadialProfile p = zero_weight_profile();
    p.description = "zero";
    return p;
  }
  if (name == "constant") {
    return {[c](double) { return c; }, [](double) { return 0.0; },
            [](double) { return 0.0; }, label.str()};
  }
  if (name == "log_bump") {
    return {[c](double r) { return c * std::log1p(r * r); },
            [c](double r) { return c * 2.0 * r / (1.0 + r * r); },
            [c](double r) {
              const double d = 1.0 + r * r;
              return c * 2.0 * (1.0 - r * r) / (d * d);
            },
            label.str()};
  }
  if (name == "rational_bump") {
    return {[c](double r) { return c / (1.0 + r * r); },
            [c](double r) {
              const double d = 1.0 + r * r;
              return -2.0 * c * r / (d * d);
            },
            [c](double r) {
              const double d = 1.0 + r * r;
              return 2.0 * c * (3.0 * r * r - 1.0) / (d * d * d);
            },
            label.str()};
  }
  throw std::invalid_argument("make_conformal_factor: unknown factor \"" +
                              name + "\"");
}

}  // namespace wvc
