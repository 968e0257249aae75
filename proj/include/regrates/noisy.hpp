#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "regrates/filters.hpp"
#include "regrates/spectral.hpp"

namespace regrates {

/// How the noise direction is drawn. worst_aligned puts the whole budget
/// on the smallest-eigenvalue atom with the sign that inflates the error
/// (the adversarial proxy for the supremum over the delta-ball); random
/// draws a uniform direction on the data sphere.
enum class NoiseStrategy { worst_aligned, random };

/// Builds data y_i = sqrt(lambda_i)(x0_i + c_i) plus a noise vector of
/// Euclidean norm exactly delta (zero when delta = 0). Throws on an empty
/// spectrum or a prior of the wrong length.
NoisyData make_noise(const SpectralProblem& p, std::span<const double> x0, double delta,
                     NoiseStrategy strategy, std::uint64_t seed = 1);

/// The a priori parameter choice: the unique alpha with
/// sqrt(alpha) ||x - x_alpha|| = delta / 2, found by bisection on the
/// strictly increasing map alpha -> sqrt(alpha) * error(alpha) to relative
/// tolerance 1e-12 in alpha. Throws when no root exists below the cap
/// 1e8 * lambda_max (a delta far beyond the scale of the problem).
double apriori_alpha(const SpectralElement& x, double delta);

/// Minimizer of alpha -> ||x_dag - x_alpha^delta|| over the standard log
/// grid with golden refinement of every local minimum.
struct OptimalAlphaResult {
  double alpha = 0.0;
  double error = 0.0;
};
OptimalAlphaResult optimal_alpha(const SpectralProblem& p, const NoisyData& d);

/// Discrepancy principle: the smallest k >= 0 with
/// ||y^delta - T x_k^delta|| <= tau * delta, located by binary search on
/// the strictly decreasing residual. Throws when the cap is exceeded,
/// which signals data that does not match the assumed smoothness.
struct DiscrepancyResult {
  long k_bar = 0;
  double error = 0.0;
  double residual = 0.0;
};
DiscrepancyResult discrepancy_stop(const SpectralProblem& p, const NoisyData& d,
                                   double tau, double sigma, long k_cap);

/// Least-squares slope of log(error) against log(delta). Requires at
/// least three pairs, strictly decreasing positive deltas and positive
/// values.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square residual in log coordinates
};
FitResult rate_exponent_fit(std::span<const std::pair<double, double>> pairs);

/// One row per noise level of an end-to-end sweep: the chosen parameter
/// (alpha or the stopping index), the achieved error and the data residual.
struct NoisySweepRow {
  double delta = 0.0;
  double parameter = 0.0;
  double error = 0.0;
  double residual = 0.0;
};
struct NoisySweep {
  std::vector<NoisySweepRow> rows;
  FitResult error_fit;
  FitResult parameter_fit;  // only meaningful for stopping indices
  NoiseStrategy strategy = NoiseStrategy::random;
  std::uint64_t seed = 0;
};

/// Tikhonov (k = 1) with the a priori rule at every delta.
NoisySweep tikhonov_apriori_sweep(const SpectralProblem& p, std::span<const double> deltas,
                                  NoiseStrategy strategy, std::uint64_t seed = 1);

/// Landweber with the discrepancy stopping rule at every delta. nu_assumed
/// only sizes the iteration cap (100x the predicted delta^{-2/(2nu+1)}
/// stopping index).
NoisySweep landweber_discrepancy_sweep(const SpectralProblem& p, double nu_assumed,
                                       std::span<const double> deltas, double tau,
                                       double sigma, NoiseStrategy strategy,
                                       std::uint64_t seed = 1);

/// Quasioptimality diagnostics: per delta,
///   LHS(delta) = delta^{-2 nu} sup_{sampled noise} ||x_dag - x^delta||^{2 nu + 1}
/// against the noise-free rate functional
///   RHS = sup_alpha alpha^{-nu} ||x - x_alpha||        (Tikhonov, a priori rule)
///   RHS = sup_k (1 + k/nu)^nu ||x - x_k||              (Landweber, discrepancy).
/// The sampled supremum runs over the worst-aligned direction plus 32
/// seeded random directions, so LHS may undershoot the true sup; the a
/// priori rule still guarantees LHS <= 2 RHS for every admissible noise.
struct QuasioptReport {
  struct Row {
    double delta = 0.0;
    double lhs = 0.0;
    double ratio = 0.0;
  };
  std::vector<Row> rows;
  double rhs = 0.0;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
};
QuasioptReport quasiopt_ratio(const SpectralProblem& p, FilterSpec::Kind method,
                              double nu, std::span<const double> deltas,
                              NoiseStrategy strategy, std::uint64_t seed = 1,
                              double tau = 1.5, double sigma = 0.0);

}  // namespace regrates
