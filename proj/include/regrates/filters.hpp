#pragma once

#include <span>
#include <vector>

#include "regrates/spectral.hpp"

namespace regrates {

/// A regularization method identified by its spectral filter factor on the
/// error x_dag - x_method:
///   cutoff:        1 if lambda < alpha else 0
///   tikhonov(k):   (alpha / (alpha + lambda))^k        (k-fold iterated)
///   landweber(k):  (1 - sigma lambda)^k                 (iteration index k)
struct FilterSpec {
  enum class Kind { cutoff, tikhonov, landweber };

  Kind kind = Kind::tikhonov;
  double alpha = 0.0;  // cutoff / tikhonov parameter
  int k = 1;           // tikhonov fold count, landweber iteration index
  double sigma = 0.0;  // landweber step size

  static FilterSpec cutoff(double alpha);
  static FilterSpec tikhonov(double alpha, int k = 1);
  static FilterSpec landweber(double sigma, int k);
};

/// The filter factor at one eigenvalue, in [0, 1]. Throws if the Landweber
/// step violates sigma * lambda <= 1 (the nondivergence condition).
double error_factor(const FilterSpec& f, double lambda);

/// ||(T*T)^r (x_dag - x_method)|| = (sum lambda^{2r} factor(lambda)^2 c^2)^{1/2}
/// for the noise-free method described by the filter.
double regularization_error(const SpectralElement& x, const FilterSpec& f, double r = 0.0);

/// Data-side quantities in the shared basis: clean y_i, additive noise
/// eta_i with ||eta|| <= delta. For a problem with element c = x_dag - x0
/// and prior coefficients x0 the clean data is y_i = sqrt(lambda_i)(x0_i + c_i);
/// the closed-form error/residual formulas below rely on that relation.
struct NoisyData {
  std::vector<double> clean;
  std::vector<double> noise;
  double delta = 0.0;

  double y(std::size_t i) const { return clean[i] + noise[i]; }
};

/// k-fold iterated Tikhonov solution from noisy data, coefficientwise
///   x_j = (lambda x_data + alpha x_{j-1}) / (lambda + alpha),
/// started at the prior x0 (empty span = zero prior). Returns the element
/// x^delta_{alpha,k} - x0 in the shared basis. With delta = 0 this
/// reproduces the filtered noise-free solution exactly.
SpectralElement tikhonov_solve_noisy(const SpectralProblem& p, const NoisyData& d,
                                     std::span<const double> x0, double alpha, int k);

/// Error of the noisy k-fold Tikhonov iterate, ||x_dag - x^delta_{alpha,k}||,
/// evaluated in closed filtered form.
double tikhonov_noisy_error(const SpectralProblem& p, const NoisyData& d,
                            double alpha, int k);

/// Residual of the noisy iterate, ||y^delta - T x^delta_{alpha,k}||.
double tikhonov_noisy_residual(const SpectralProblem& p, const NoisyData& d,
                               double alpha, int k);

/// One Landweber iterate per entry: error ||x_dag - x_k^delta|| and
/// residual ||y^delta - T x_k^delta||, k = 0..k_max. Runs the literal
/// recurrence x_k = x_{k-1} + sigma T*(y^delta - T x_{k-1}); the closed
/// filtered forms below are cross-checked against it in the tests.
struct LandweberStep {
  double error = 0.0;
  double residual = 0.0;
};
std::vector<LandweberStep> landweber_run(const SpectralProblem& p, const NoisyData& d,
                                         std::span<const double> x0, double sigma,
                                         int k_max);

/// Closed-form noisy Landweber error/residual at a single iteration index.
double landweber_noisy_error(const SpectralProblem& p, const NoisyData& d,
                             double sigma, long k);
double landweber_noisy_residual(const SpectralProblem& p, const NoisyData& d,
                                double sigma, long k);

/// Largest admissible Landweber step, sigma = 1 / ||T*T||.
double default_landweber_sigma(const SpectralProblem& p);

}  // namespace regrates
