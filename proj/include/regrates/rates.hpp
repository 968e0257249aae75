#pragma once

#include "regrates/filters.hpp"
#include "regrates/spectral.hpp"
#include "regrates/supsearch.hpp"

namespace regrates {

/// log Gamma(z) for z > 0 by a Lanczos series (no reflection needed on the
/// positive axis); relative accuracy better than 1e-12 on [0.1, 1e6].
double log_gamma(double z);

/// A computed rate functional sup together with the two-sided bounds the
/// theory puts around it. arg is alpha for Tikhonov and the iteration
/// index for Landweber.
struct RateReport {
  double nu = 0.0;
  FilterSpec::Kind method = FilterSpec::Kind::tikhonov;
  double sup_value = 0.0;
  double arg = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
  bool converged = false;
};

/// Noise-free k-fold Tikhonov error ||x - x_{alpha,k}|| (filter route).
double tikhonov_error(const SpectralElement& x, double alpha, int k = 1);

/// sup_{alpha>0} alpha^{-nu} ||x - x_{alpha,k}|| for 0 <= nu <= k, with the
/// bounds N_{nu/k}^{1-2k} ||x||_{nu:k} <= sup <= ||x||_{nu:k}. At nu = 0
/// the supremum is the limit alpha -> infinity (= ||x||); at nu = k it is
/// the limit alpha -> 0, located by extending the grid downward until the
/// value stabilizes (the map is monotone there).
RateReport tikhonov_rate(const SpectralElement& x, double nu, int k);

/// Checks the sharper one-sided bound
///   ||x - x_alpha|| <= alpha^nu (1-nu)^{-1/2} |||x|||_nu, 0 < nu < 1,
/// across the standard alpha grid; reports the worst ratio.
struct MorePreciseBoundReport {
  double nu = 0.0;
  double worst_ratio = 0.0;
  double worst_alpha = 0.0;
  bool pass = false;
};
MorePreciseBoundReport tikhonov_more_precise_bound(const SpectralElement& x, double nu);

/// Saturation: alpha^{-k} ||x - x_{alpha,k}|| is nondecreasing as alpha
/// decreases and, for x != 0, stabilizes at the positive limit ||x||_k, so
/// the error cannot be o(alpha^k). Returns true when that behavior is
/// observed (vacuously true for x = 0).
bool saturation_check(const SpectralElement& x, int k);

/// Landweber rate functional
///   Delta = sup_{k>=0} eps_k^{-(r+nu)} ||(T*T)^r (x - x_k)||,
///   eps_k = (1/sigma) (r+nu) / (k+r+nu),
/// with bounds c1 sqrt(nu/(r+nu)) |||x|||_nu <= Delta <= c2 |||x|||_nu.
/// Integers up to 1024 are scanned densely, then a geometric ladder; the
/// scanned span keeps extending by a factor of 10 until the running sup
/// has not moved by more than 1e-9 relative over the final decade.
RateReport delta_rate(const SpectralElement& x, double nu, double r, double sigma,
                      long k_max);

/// The normalized Landweber quantity eps_k^{-(r+nu)} ||(T*T)^r (x - x_k)||
/// at a single iteration index.
double landweber_rate_value(const SpectralElement& x, double nu, double r, double sigma,
                            long k);

/// c1 = inf_{k>=0} (1 - sigma eps_k)^k (eps_{k+1}/eps_k)^{r+nu}, which is
/// also bounded below by (sigma eps_1 / e)^{r+nu}. The scan extends until
/// the sequence has entered its monotone tail toward e^{-(r+nu)}.
struct C1Result {
  double value = 0.0;
  long arg_k = 0;
  double lower_bound = 0.0;  // (sigma eps_1 / e)^{r+nu}
};
C1Result c1_constant(double nu, double r, double sigma, long k_max);

/// c2 = sup_{s,a>0} I(s,a)^{1/2} with
///   I(s,a) = ((s+a)/a)^a Gamma(s+1) Gamma(a+1) / Gamma(s+a+1).
/// I is monotone in s toward Ibar(a) = a^{-a} Gamma(a+1), so the sup is
/// realized as the maximum of Ibar over (0,1], located by golden section;
/// the large-s cross-check against I(s,a*) is reported too.
struct C2Result {
  double c2 = 0.0;
  double a_star = 0.0;
  double ibar_star = 0.0;
  double large_s_check = 0.0;  // I(1e6, a_star)
};
C2Result c2_constant();

/// I(s, a) itself, for tests and the cross-check.
double beta_ratio(double s, double a);

}  // namespace regrates
