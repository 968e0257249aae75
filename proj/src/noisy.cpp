#include "regrates/noisy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "regrates/rates.hpp"
#include "regrates/rng.hpp"
#include "regrates/supsearch.hpp"

namespace regrates {

NoisyData make_noise(const SpectralProblem& p, std::span<const double> x0, double delta,
                     NoiseStrategy strategy, std::uint64_t seed) {
  const SpectralElement& x = p.element;
  if (x.empty()) throw std::invalid_argument("make_noise: empty spectrum");
  if (!(delta >= 0.0)) throw std::invalid_argument("make_noise: delta must be >= 0");
  if (!x0.empty() && x0.size() != x.size()) {
    throw std::invalid_argument("make_noise: prior size mismatch");
  }
  NoisyData d;
  d.delta = delta;
  const std::size_t n = x.size();
  d.clean.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prior = x0.empty() ? 0.0 : x0[i];
    d.clean[i] = std::sqrt(x.lambda(i)) * (prior + x.coeff(i));
  }
  if (delta == 0.0) {
    d.noise.assign(n, 0.0);
    return d;
  }
  switch (strategy) {
    case NoiseStrategy::worst_aligned: {
      d.noise.assign(n, 0.0);
      // All of the budget on the slowest mode, signed against the clean
      // coefficient so the filtered error terms add up.
      const double c0 = x.coeff(0);
      d.noise[0] = (c0 >= 0.0 ? -1.0 : 1.0) * delta;
      break;
    }
    case NoiseStrategy::random: {
      Rng rng(seed);
      d.noise = rng.sphere(n, delta);
      break;
    }
  }
  return d;
}

double apriori_alpha(const SpectralElement& x, double delta) {
  if (x.empty() || x.norm_sq() == 0.0) {
    throw std::invalid_argument("apriori_alpha: element must be nonzero");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("apriori_alpha: delta must be positive");
  const double target = 0.5 * delta;
  const auto g = [&](double alpha) {
    return std::sqrt(alpha) * tikhonov_error(x, alpha, 1);
  };
  const double cap = 1e8 * x.lambda_max();
  if (g(cap) < target) {
    throw std::invalid_argument(
        "apriori_alpha: no root below the alpha cap; delta is out of scale "
        "for this problem");
  }
  double lo = std::min(x.lambda_min() * 1e-8, cap * 0.5);
  while (g(lo) >= target) lo *= 1e-2;
  double hi = cap;
  // Bisection in log alpha on a strictly increasing map.
  for (int it = 0; it < 200 && hi - lo > 1e-12 * lo; ++it) {
    const double mid = std::sqrt(lo * hi);
    (g(mid) >= target ? hi : lo) = mid;
  }
  return std::sqrt(lo * hi);
}

OptimalAlphaResult optimal_alpha(const SpectralProblem& p, const NoisyData& d) {
  const SpectralElement& x = p.element;
  if (x.empty()) throw std::invalid_argument("optimal_alpha: empty spectrum");
  const auto err = [&](double alpha) { return tikhonov_noisy_error(p, d, alpha, 1); };
  const SupResult inf = inf_log_grid(err, x.lambda_min() / kGridPad,
                                     x.lambda_max() * kGridPad);
  return {inf.arg_sup, inf.value};
}

DiscrepancyResult discrepancy_stop(const SpectralProblem& p, const NoisyData& d,
                                   double tau, double sigma, long k_cap) {
  if (!(tau > 1.0)) throw std::invalid_argument("discrepancy_stop: tau must exceed 1");
  if (p.element.empty()) throw std::invalid_argument("discrepancy_stop: empty spectrum");
  if (sigma * p.element.lambda_max() > 1.0) {
    throw std::invalid_argument("discrepancy_stop: sigma * ||T*T|| must not exceed 1");
  }
  const double threshold = tau * d.delta;
  const auto resid = [&](long k) { return landweber_noisy_residual(p, d, sigma, k); };

  if (resid(0) <= threshold) {
    return {0, landweber_noisy_error(p, d, sigma, 0), resid(0)};
  }
  if (resid(k_cap) > threshold) {
    throw std::runtime_error(
        "discrepancy_stop: residual still above tau*delta at the iteration "
        "cap; the data does not match the assumed smoothness");
  }
  long lo = 0, hi = k_cap;  // resid(lo) > threshold >= resid(hi)
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (resid(mid) <= threshold ? hi : lo) = mid;
  }
  return {hi, landweber_noisy_error(p, d, sigma, hi), resid(hi)};
}

FitResult rate_exponent_fit(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) {
    throw std::invalid_argument("rate_exponent_fit: need at least three pairs");
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [delta, value] = pairs[i];
    if (!(delta > 0.0) || !(value > 0.0)) {
      throw std::invalid_argument("rate_exponent_fit: inputs must be positive");
    }
    if (i > 0 && delta >= prev) {
      throw std::invalid_argument("rate_exponent_fit: deltas must strictly decrease");
    }
    prev = delta;
  }
  const std::size_t n = pairs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [delta, value] : pairs) {
    const double u = std::log(delta);
    const double v = std::log(value);
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
  }
  FitResult fit;
  const double den = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (const auto& [delta, value] : pairs) {
    const double r = std::log(value) - (fit.intercept + fit.slope * std::log(delta));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

NoisySweep tikhonov_apriori_sweep(const SpectralProblem& p, std::span<const double> deltas,
                                  NoiseStrategy strategy, std::uint64_t seed) {
  NoisySweep sweep;
  sweep.strategy = strategy;
  sweep.seed = seed;
  std::vector<std::pair<double, double>> err_pairs;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    NoisySweepRow row;
    row.delta = delta;
    if (delta == 0.0) {
      // noise-free limit of the rule: alpha -> 0 and the error vanishes
      sweep.rows.push_back(row);
      continue;
    }
    const double alpha = apriori_alpha(p.element, delta);
    const NoisyData d = make_noise(p, {}, delta, strategy, seed + i);
    row.parameter = alpha;
    row.error = tikhonov_noisy_error(p, d, alpha, 1);
    row.residual = tikhonov_noisy_residual(p, d, alpha, 1);
    sweep.rows.push_back(row);
    if (row.error > 0.0) err_pairs.emplace_back(delta, row.error);
  }
  if (err_pairs.size() >= 3) sweep.error_fit = rate_exponent_fit(err_pairs);
  return sweep;
}

NoisySweep landweber_discrepancy_sweep(const SpectralProblem& p, double nu_assumed,
                                       std::span<const double> deltas, double tau,
                                       double sigma, NoiseStrategy strategy,
                                       std::uint64_t seed) {
  if (!(nu_assumed > 0.0)) {
    throw std::invalid_argument("landweber_discrepancy_sweep: nu must be positive");
  }
  if (sigma <= 0.0) sigma = default_landweber_sigma(p);
  NoisySweep sweep;
  sweep.strategy = strategy;
  sweep.seed = seed;
  std::vector<std::pair<double, double>> err_pairs, k_pairs;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    if (delta == 0.0) {
      // the discrepancy threshold is 0, reached only in the k -> infinity
      // limit where the error vanishes; report the limiting row
      NoisySweepRow row;
      row.delta = 0.0;
      sweep.rows.push_back(row);
      continue;
    }
    const NoisyData d = make_noise(p, {}, delta, strategy, seed + i);
    const double k_est = std::pow(delta, -2.0 / (2.0 * nu_assumed + 1.0));
    const long k_cap = static_cast<long>(100.0 * std::max(k_est, 1.0)) + 16;
    const DiscrepancyResult stop = discrepancy_stop(p, d, tau, sigma, k_cap);
    NoisySweepRow row;
    row.delta = delta;
    row.parameter = static_cast<double>(stop.k_bar);
    row.error = stop.error;
    row.residual = stop.residual;
    sweep.rows.push_back(row);
    if (row.error > 0.0) err_pairs.emplace_back(delta, row.error);
    if (stop.k_bar > 0) k_pairs.emplace_back(delta, static_cast<double>(stop.k_bar));
  }
  if (err_pairs.size() >= 3) sweep.error_fit = rate_exponent_fit(err_pairs);
  if (k_pairs.size() >= 3) sweep.parameter_fit = rate_exponent_fit(k_pairs);
  return sweep;
}

QuasioptReport quasiopt_ratio(const SpectralProblem& p, FilterSpec::Kind method,
                              double nu, std::span<const double> deltas,
                              NoiseStrategy strategy, std::uint64_t seed, double tau,
                              double sigma) {
  const SpectralElement& x = p.element;
  if (x.empty()) throw std::invalid_argument("quasiopt_ratio: empty spectrum");
  QuasioptReport rep;

  if (method == FilterSpec::Kind::tikhonov) {
    if (!(nu >= 0.0 && nu <= 1.0)) {
      throw std::invalid_argument("quasiopt_ratio: tikhonov requires 0 <= nu <= 1");
    }
    rep.rhs = tikhonov_rate(x, nu, 1).sup_value;
  } else if (method == FilterSpec::Kind::landweber) {
    if (!(nu > 0.0)) {
      throw std::invalid_argument("quasiopt_ratio: landweber requires nu > 0");
    }
    if (sigma <= 0.0) sigma = default_landweber_sigma(p);
    // (1 + k/nu)^nu = (sigma eps_k)^{-nu}, so the rate functional is
    // sigma^nu times the Landweber Delta at r = 0.
    rep.rhs = std::pow(sigma, nu) * delta_rate(x, nu, 0.0, sigma, 1024).sup_value;
  } else {
    throw std::invalid_argument("quasiopt_ratio: method must be tikhonov or landweber");
  }

  const int kRandomDirections = 32;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t di = 0; di < deltas.size(); ++di) {
    const double delta = deltas[di];
    const double alpha =
        method == FilterSpec::Kind::tikhonov ? apriori_alpha(x, delta) : 0.0;
    double worst_err = 0.0;
    for (int trial = 0; trial <= kRandomDirections; ++trial) {
      const NoiseStrategy s = trial == 0 ? NoiseStrategy::worst_aligned : strategy;
      const NoisyData d = make_noise(p, {}, delta, s, seed + 1000 * di + trial);
      double err = 0.0;
      if (method == FilterSpec::Kind::tikhonov) {
        err = tikhonov_noisy_error(p, d, alpha, 1);
      } else {
        const double k_est = std::pow(delta, -2.0 / (2.0 * std::max(nu, 0.1) + 1.0));
        const long k_cap = static_cast<long>(100.0 * std::max(k_est, 1.0)) + 16;
        err = discrepancy_stop(p, d, tau, sigma, k_cap).error;
      }
      worst_err = std::max(worst_err, err);
      if (s == NoiseStrategy::worst_aligned && strategy == NoiseStrategy::worst_aligned) {
        break;  // all samples identical
      }
    }
    QuasioptReport::Row row;
    row.delta = delta;
    row.lhs = std::pow(delta, -2.0 * nu) * std::pow(worst_err, 2.0 * nu + 1.0);
    row.ratio = rep.rhs > 0.0 ? row.lhs / rep.rhs : 0.0;
    rep.rows.push_back(row);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.min_ratio = std::min(rep.min_ratio, row.ratio);
  }
  return rep;
}

}  // namespace regrates
