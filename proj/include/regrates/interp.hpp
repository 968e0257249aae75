#pragma once

#include <cstdint>

#include "regrates/spectral.hpp"
#include "regrates/supsearch.hpp"

namespace regrates {

/// The interpolation constant N_theta in [1, sqrt(2)] defined by
/// N_theta^{-2} = theta^theta (1-theta)^{1-theta}, with 0^0 := 1 so that
/// N_0 = N_1 = 1 and theta -> N_theta is continuous on [0, 1].
double n_theta(double theta);

/// Scale norm ||x||_gamma^2 = sum lambda_i^{-2 gamma} c_i^2, gamma >= 0.
/// gamma = 0 recovers the plain norm.
double hilbert_norm_sq(const SpectralElement& x, double gamma);
double hilbert_norm(const SpectralElement& x, double gamma);

/// Spectral tail norm |||x|||_nu = sup_{t>0} t^{-nu} ||E_[0,t) x||.
/// For an atomic measure the half-open supremum is realized as t decreases
/// to an atom from above, so it equals max_i lambda_i^{-nu} mu([0,lambda_i])^{1/2},
/// computed exactly in one pass over prefix sums; arg_sup reports the atom.
SupResult triple_norm(const SpectralElement& x, double nu);

/// K-functional of the pair (X, X_gamma):
/// K_t(x)^2 = sum_i t^2 / (t^2 + lambda_i^{2 gamma}) c_i^2, t > 0, gamma > 0.
/// Nondecreasing in t with limit ||x||, and K_t <= min(||x||, t ||x||_gamma).
double k_functional_sq(const SpectralElement& x, double gamma, double t);
double k_functional(const SpectralElement& x, double gamma, double t);

/// Interpolation norm ||x||_{nu:gamma} = sup_{t>0} t^{-nu/gamma} K_t(x)
/// for 0 <= nu <= gamma. The endpoints are exact: nu = 0 gives ||x|| and
/// nu = gamma gives ||x||_gamma. In between the supremum is located on the
/// shared log grid (64 pts/decade over the spectral range padded by 4
/// decades each side) with golden refinement of every grid-local maximum;
/// the objective is smooth but not assumed unimodal.
SupResult interp_norm(const SpectralElement& x, double nu, double gamma);

/// The chain of embedding constants between the tail, interpolation and
/// scale norms, evaluated on one element:
///   a = sqrt(1 - nu/gamma) ||x||_{nu:gamma}
///   b = |||x|||_nu
///   c = N_{nu/gamma} ||x||_{nu:gamma}
///   d = ||x||_nu
///   e = ||T*T||^{gamma-nu} ||x||_gamma
/// with a <= b <= c <= d <= e, plus the uniform two-sided comparison
/// (1/sqrt 2) |||x|||_nu <= ||x||_{nu:2nu} <= sqrt 2 |||x|||_nu.
struct SandwichReport {
  double nu = 0.0, gamma = 0.0;
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
  double half_norm = 0.0;  // ||x||_{nu:2nu}
  bool chain_pass = false;
  bool equiv_pass = false;
  bool pass = false;
  double tolerance = 0.0;
};
SandwichReport sandwich_report(const SpectralElement& x, double nu, double gamma,
                               double rel_tol = 1e-9);

/// Direct-summation check of the two measure tail bounds, gamma > nu > 0,
/// r >= 0, Lambda > 0:
///   mu([0,Lambda)) + Lambda^{2g} int_{[Lambda,inf)} l^{-2g} dmu
///       <= g/(g-nu) Lambda^{2nu} |||mu|||_nu^2
///   int_{[0,Lambda)} l^{-2r} dmu <= (r+nu)/nu Lambda^{2nu} |||mu|||_{r+nu}^2
struct TailBoundReport {
  double lhs_high = 0.0, rhs_high = 0.0;
  double lhs_low = 0.0, rhs_low = 0.0;
  bool pass_high = false, pass_low = false, pass = false;
};
TailBoundReport tail_bound_check(const DiscreteSpectralMeasure& mu, double nu,
                                 double gamma, double r, double lambda_cap,
                                 double rel_tol = 1e-12);

/// Lower-bound estimate of
///   sup_{||w|| = 1} ||(T*T)^gamma w||^{-nu/gamma} |<x, w>|
/// by multi-start projected gradient ascent over coefficients of w in the
/// shared eigenbasis (restricting w to the span of the atoms loses
/// nothing). Every iterate is feasible, so `sup.value` is a certified
/// lower bound; `target` carries N_{nu/gamma} ||x||_{nu:gamma}, which the
/// variational characterization says the supremum equals, and `gap_rel`
/// the relative shortfall. Throws if x = 0.
struct VariationalResult {
  SupResult sup;         // arg_sup is unused; value is the certified bound
  double target = 0.0;
  double gap_rel = 0.0;
};
VariationalResult variational_sup(const SpectralElement& x, double nu, double gamma,
                                  int random_starts = 32, std::uint64_t seed = 1);

}  // namespace regrates
