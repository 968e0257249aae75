#include "regrates/distance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "regrates/interp.hpp"
#include "regrates/supsearch.hpp"

namespace regrates {

namespace {

struct MultiplierFamily {
  std::vector<double> lam2g;  // lambda^{2 gamma}
  std::vector<double> w;      // c^2

  MultiplierFamily(const SpectralElement& x, double gamma)
      : lam2g(x.size()), w(x.size()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      lam2g[i] = std::pow(x.lambda(i), 2.0 * gamma);
      w[i] = x.coeff(i) * x.coeff(i);
    }
  }

  // ||x1(beta)||_gamma^2 = sum (lam^{2g} / (lam^{2g}+beta))^2 lam^{-2g} w
  //                      = sum lam^{2g} w / (lam^{2g}+beta)^2
  double constraint_sq(double beta) const {
    double s = 0.0;
    for (std::size_t i = 0; i < lam2g.size(); ++i) {
      const double den = lam2g[i] + beta;
      s += lam2g[i] * w[i] / (den * den);
    }
    return s;
  }

  // ||x - x1(beta)||^2 = sum (beta / (lam^{2g}+beta))^2 w
  double residual_sq(double beta) const {
    double s = 0.0;
    for (std::size_t i = 0; i < lam2g.size(); ++i) {
      const double q = beta / (lam2g[i] + beta);
      s += q * q * w[i];
    }
    return s;
  }
};

}  // namespace

DistanceResult distance(const SpectralElement& x, double r, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("distance: gamma must be positive");
  if (!(r >= 0.0)) throw std::invalid_argument("distance: radius must be >= 0");
  if (x.empty()) return {0.0, 0.0};
  if (r == 0.0) return {x.norm(), std::numeric_limits<double>::infinity()};

  const MultiplierFamily fam(x, gamma);
  const double r2 = r * r;
  if (fam.constraint_sq(0.0) <= r2) return {0.0, 0.0};  // x itself is feasible

  // The constraint map is strictly decreasing in beta; bracket then bisect
  // in log beta.
  double lo = fam.lam2g.front() * 1e-8;
  while (fam.constraint_sq(lo) <= r2) lo *= 1e-2;
  double hi = fam.lam2g.back() * 1e8;
  while (fam.constraint_sq(hi) >= r2) hi *= 1e2;
  for (int it = 0; it < 400; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double c = fam.constraint_sq(mid);
    if (std::abs(c - r2) <= 1e-12 * r2) {
      return {std::sqrt(fam.residual_sq(mid)), mid};
    }
    (c > r2 ? lo : hi) = mid;
    if (hi - lo <= 1e-15 * lo) break;
  }
  const double beta = std::sqrt(lo * hi);
  return {std::sqrt(fam.residual_sq(beta)), beta};
}

DistanceProfile distance_profile(const SpectralElement& x, double gamma,
                                 std::span<const double> radii) {
  DistanceProfile prof;
  prof.gamma = gamma;
  prof.samples.reserve(radii.size());
  for (double r : radii) {
    const DistanceResult dr = distance(x, r, gamma);
    prof.samples.push_back({r, dr.d, dr.beta});
  }
  return prof;
}

ConjugateReport conjugate_equivalence_check(const SpectralElement& x, double gamma,
                                            double t, double rel_tol) {
  if (!(t > 0.0)) throw std::invalid_argument("conjugate_equivalence_check: t > 0 required");
  ConjugateReport rep;
  rep.t = t;
  rep.k_t = k_functional(x, gamma, t);
  if (x.empty()) {
    rep.pass_equal = rep.pass_between = rep.pass = true;
    return rep;
  }

  const double r_hi = hilbert_norm(x, gamma);  // d vanishes beyond this radius
  const double lo = r_hi * 1e-9;
  const double hi = r_hi * 10.0;
  const auto quad = [&](double r) {
    const double d = distance(x, r, gamma).d;
    return std::sqrt(d * d + t * t * r * r);
  };
  const auto lin = [&](double r) { return distance(x, r, gamma).d + t * r; };
  rep.quad_inf = inf_log_grid(quad, lo, hi, kPointsPerDecade, 1e-12).value;
  rep.lin_inf = inf_log_grid(lin, lo, hi, kPointsPerDecade, 1e-12).value;
  // r = 0 is not in the log grid; the infima extend continuously there.
  rep.quad_inf = std::min(rep.quad_inf, x.norm());
  rep.lin_inf = std::min(rep.lin_inf, x.norm());

  const double scale = std::max(rep.k_t, 1e-300);
  rep.pass_equal = std::abs(rep.quad_inf - rep.k_t) <= rel_tol * scale;
  rep.pass_between = rep.quad_inf <= rep.lin_inf * (1.0 + rel_tol) &&
                     rep.lin_inf <= std::sqrt(2.0) * rep.quad_inf * (1.0 + rel_tol);
  rep.pass = rep.pass_equal && rep.pass_between;
  return rep;
}

DEIdentityReport d_e_identity(const SpectralElement& x, double theta, double gamma,
                              double rel_tol) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("d_e_identity: theta must lie strictly inside (0, 1)");
  }
  if (!(gamma > 0.0)) throw std::invalid_argument("d_e_identity: gamma must be positive");
  DEIdentityReport rep;
  rep.theta = theta;
  if (x.empty()) {
    rep.pass = true;
    return rep;
  }

  // Route D: outer supremum over the radius, inner bisection for d(r).
  const double r_hi = hilbert_norm(x, gamma);
  rep.d_route = sup_log_grid(
                    [&](double r) {
                      const double d = distance(x, r, gamma).d;
                      return std::pow(d, 1.0 - theta) * std::pow(r, theta);
                    },
                    r_hi * 1e-9, r_hi, kPointsPerDecade, 1e-12)
                    .value;

  // Route E: supremum over the multiplier beta directly; each beta marks the
  // feasible pair (||x - x1(beta)||, ||x1(beta)||_gamma) on the trade-off
  // curve.
  const MultiplierFamily fam(x, gamma);
  const double beta_lo = fam.lam2g.front() / kGridPad;
  const double beta_hi = fam.lam2g.back() * kGridPad;
  rep.e_route = sup_log_grid(
                    [&](double beta) {
                      const double d = std::sqrt(fam.residual_sq(beta));
                      const double r = std::sqrt(fam.constraint_sq(beta));
                      return std::pow(d, 1.0 - theta) * std::pow(r, theta);
                    },
                    beta_lo, beta_hi, kPointsPerDecade, 1e-12)
                    .value;

  rep.target = interp_norm(x, theta * gamma, gamma).value / n_theta(theta);
  const double scale = std::max(rep.target, 1e-300);
  const double slack = rel_tol * scale;
  rep.pass_e_below_target = rep.e_route <= rep.target + slack;
  rep.pass_target_below_d = rep.target <= rep.d_route + slack;
  rep.pass_d_below_e = rep.d_route <= rep.e_route + slack;
  rep.pass = rep.pass_e_below_target && rep.pass_target_below_d && rep.pass_d_below_e &&
             std::abs(rep.d_route - rep.target) <= slack &&
             std::abs(rep.e_route - rep.target) <= slack;
  return rep;
}

}  // namespace regrates
