#pragma once

#include <vector>

#include "regrates/spectral.hpp"

namespace regrates {

/// d(r) = inf { ||x - x1|| : ||x1||_gamma <= r } together with the
/// Lagrange multiplier beta >= 0 attaining it. In the eigenbasis the
/// minimizer is coordinatewise x1_i = eps_i c_i with
/// eps_i(beta) = lambda_i^{2 gamma} / (lambda_i^{2 gamma} + beta),
/// and beta is found by bisection on the strictly decreasing constraint
/// map beta -> ||x1(beta)||_gamma^2. beta is infinity at r = 0 and 0 once
/// r >= ||x||_gamma (where d vanishes).
struct DistanceResult {
  double d = 0.0;
  double beta = 0.0;
};
DistanceResult distance(const SpectralElement& x, double r, double gamma);

/// d sampled along a grid of radii; d is nonincreasing and convex with
/// d(0) = ||x||, and the multiplier decreases as r grows.
struct DistanceProfile {
  double gamma = 0.0;
  struct Sample {
    double r, d, beta;
  };
  std::vector<Sample> samples;
};
DistanceProfile distance_profile(const SpectralElement& x, double gamma,
                                 std::span<const double> radii);

/// Checks the conjugate duality between d and the K-functional at one t:
///   A = inf_{r>0} (d(r)^2 + t^2 r^2)^{1/2}  must equal  K_t(x),
///   B = inf_{r>0} (d(r) + t r)              (minus the conjugate of d at -t),
/// with A <= B <= sqrt(2) A.
struct ConjugateReport {
  double t = 0.0;
  double quad_inf = 0.0;  // A
  double lin_inf = 0.0;   // B
  double k_t = 0.0;
  bool pass_equal = false;
  bool pass_between = false;
  bool pass = false;
};
ConjugateReport conjugate_equivalence_check(const SpectralElement& x, double gamma,
                                            double t, double rel_tol = 1e-6);

/// The two equal routes to the decay constant of d at infinity:
///   D = sup_{r>0} d(r)^{1-theta} r^theta          (outer grid over r)
///   E = sup over the multiplier family beta of
///       ||x - x1(beta)||^{1-theta} ||x1(beta)||_gamma^theta
/// both of which equal N_theta^{-1} ||x||_{theta gamma : gamma}. The three
/// one-sided comparisons closing the equality circle are reported
/// individually: E <= target, target <= D, and D <= E.
struct DEIdentityReport {
  double theta = 0.0;
  double d_route = 0.0;
  double e_route = 0.0;
  double target = 0.0;
  bool pass_e_below_target = false;
  bool pass_target_below_d = false;
  bool pass_d_below_e = false;
  bool pass = false;
};
DEIdentityReport d_e_identity(const SpectralElement& x, double theta, double gamma,
                              double rel_tol = 1e-4);

}  // namespace regrates
