#pragma once

#include <functional>

namespace regrates {

/// Metadata of the logarithmic evaluation grid behind a computed supremum.
struct GridSpec {
  double log10_lo = 0.0;
  double log10_hi = 0.0;
  int points = 0;
  int points_per_decade = 0;
};

/// A numerically located supremum: the value, the argument at which it was
/// found, the grid that bracketed it and how many local maxima were
/// refined. converged is false when the best value sat on a grid endpoint
/// (the true supremum may live outside the scanned range) or when an
/// extension rule hit its cap.
struct SupResult {
  double value = 0.0;
  double arg_sup = 0.0;
  GridSpec grid;
  int refinements = 0;
  bool converged = false;
};

/// Grid policy shared by every sup/inf over a positive parameter:
/// 64 points per decade, padded 4 decades on each side of the range of
/// interest, each grid-local extremum polished by golden-section in log
/// coordinates to relative tolerance 1e-10.
inline constexpr int kPointsPerDecade = 64;
inline constexpr double kGridPad = 1e4;
inline constexpr double kGoldenRelTol = 1e-10;

/// Maximizes f over [lo, hi] (0 < lo < hi) on the log grid; every local
/// maximum of the grid is refined, so non-unimodal objectives are handled
/// as long as their maxima are separated at the grid resolution.
SupResult sup_log_grid(const std::function<double(double)>& f, double lo, double hi,
                       int points_per_decade = kPointsPerDecade,
                       double rel_tol = kGoldenRelTol);

/// Same machinery for a minimum.
SupResult inf_log_grid(const std::function<double(double)>& f, double lo, double hi,
                       int points_per_decade = kPointsPerDecade,
                       double rel_tol = kGoldenRelTol);

/// Golden-section maximization of f(exp(u)) for u in [log lo, log hi].
/// Returns the located argument t; *value receives f(t).
double golden_max_log(const std::function<double(double)>& f, double lo, double hi,
                      double rel_tol, double* value);

}  // namespace regrates
