#include "regrates/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "regrates/interp.hpp"

namespace regrates {

double log_gamma(double z) {
  if (!(z > 0.0)) throw std::invalid_argument("log_gamma: z must be positive");
  // Lanczos, g = 7, 9 coefficients.
  static constexpr double kCoeff[9] = {
      0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
      771.32342877765313,    -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z < 0.5) {
    return log_gamma(z + 1.0) - std::log(z);
  }
  const double x = z - 1.0;
  double a = kCoeff[0];
  for (int i = 1; i < 9; ++i) a += kCoeff[i] / (x + i);
  const double t = x + 7.5;
  return 0.91893853320467274178 /* log sqrt(2 pi) */ +
         (x + 0.5) * std::log(t) - t + std::log(a);
}

namespace {

double pow_int(double q, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

/// sum (alpha/(alpha+lambda))^{2k} c^2 with the per-atom arrays unpacked once.
struct TikhonovErrorFn {
  std::vector<double> lam, w;
  int k;

  TikhonovErrorFn(const SpectralElement& x, int kk) : lam(x.size()), w(x.size()), k(kk) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      lam[i] = x.lambda(i);
      w[i] = x.coeff(i) * x.coeff(i);
    }
  }

  double operator()(double alpha) const {
    double s = 0.0;
    if (k <= 8) {
      for (std::size_t i = 0; i < lam.size(); ++i) {
        const double q = alpha / (alpha + lam[i]);
        s += pow_int(q * q, k) * w[i];
      }
    } else {
      for (std::size_t i = 0; i < lam.size(); ++i) {
        s += std::pow(alpha / (alpha + lam[i]), 2 * k) * w[i];
      }
    }
    return std::sqrt(s);
  }
};

}  // namespace

double tikhonov_error(const SpectralElement& x, double alpha, int k) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tikhonov_error: alpha > 0 required");
  if (k < 1) throw std::invalid_argument("tikhonov_error: k >= 1 required");
  return TikhonovErrorFn(x, k)(alpha);
}

RateReport tikhonov_rate(const SpectralElement& x, double nu, int k) {
  if (k < 1) throw std::invalid_argument("tikhonov_rate: k >= 1 required");
  if (!(nu >= 0.0) || nu > static_cast<double>(k)) {
    throw std::invalid_argument("tikhonov_rate: need 0 <= nu <= k");
  }
  RateReport rep;
  rep.nu = nu;
  rep.method = FilterSpec::Kind::tikhonov;
  const double gamma = static_cast<double>(k);
  rep.lower = std::pow(n_theta(nu / gamma), 1.0 - 2.0 * k) * interp_norm(x, nu, gamma).value;
  rep.upper = interp_norm(x, nu, gamma).value;

  if (x.empty()) {
    rep.pass = true;
    rep.converged = true;
    return rep;
  }

  const TikhonovErrorFn err(x, k);
  if (nu == 0.0) {
    // alpha^0 * err(alpha) increases toward ||x|| as alpha -> infinity.
    rep.sup_value = x.norm();
    rep.arg = std::numeric_limits<double>::infinity();
    rep.converged = true;
  } else if (nu == gamma) {
    // Monotone limit alpha -> 0; extend downward until the value settles.
    // The map increases as alpha drops, so a decrease can only be
    // floating-point underflow far past stabilization.
    double alpha = x.lambda_min() / kGridPad;
    double prev = std::pow(alpha, -nu) * err(alpha);
    rep.sup_value = prev;
    rep.arg = alpha;
    rep.converged = false;
    for (int i = 0; i < 40; ++i) {
      alpha *= 0.1;
      const double v = std::pow(alpha, -nu) * err(alpha);
      if (!std::isfinite(v) || v < prev) break;
      rep.sup_value = v;
      rep.arg = alpha;
      if (v > 0.0 && std::abs(v - prev) <= 1e-10 * v) {
        rep.converged = true;
        break;
      }
      prev = v;
    }
  } else {
    const SupResult sup = sup_log_grid(
        [&](double alpha) { return std::pow(alpha, -nu) * err(alpha); },
        x.lambda_min() / kGridPad, x.lambda_max() * kGridPad);
    rep.sup_value = sup.value;
    rep.arg = sup.arg_sup;
    rep.converged = sup.converged;
  }

  const double slack = 1e-6 * std::max(rep.upper, 1e-300);
  rep.pass = rep.lower <= rep.sup_value + slack && rep.sup_value <= rep.upper + slack;
  return rep;
}

MorePreciseBoundReport tikhonov_more_precise_bound(const SpectralElement& x, double nu) {
  if (!(nu > 0.0 && nu < 1.0)) {
    throw std::invalid_argument("tikhonov_more_precise_bound: need 0 < nu < 1");
  }
  MorePreciseBoundReport rep;
  rep.nu = nu;
  if (x.empty()) {
    rep.pass = true;
    return rep;
  }
  const double bound_const = triple_norm(x, nu).value / std::sqrt(1.0 - nu);
  const TikhonovErrorFn err(x, 1);
  const double lo = x.lambda_min() / kGridPad;
  const double hi = x.lambda_max() * kGridPad;
  const int n = static_cast<int>(std::ceil((std::log10(hi) - std::log10(lo)) * kPointsPerDecade)) + 1;
  for (int i = 0; i < n; ++i) {
    const double alpha = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    const double ratio = err(alpha) / (std::pow(alpha, nu) * bound_const);
    if (ratio > rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_alpha = alpha;
    }
  }
  rep.pass = rep.worst_ratio <= 1.0 + 1e-9;
  return rep;
}

bool saturation_check(const SpectralElement& x, int k) {
  if (k < 1) throw std::invalid_argument("saturation_check: k >= 1 required");
  if (x.empty() || x.norm_sq() == 0.0) return true;  // vacuous
  const TikhonovErrorFn err(x, k);
  double alpha = x.lambda_min();
  double prev = std::pow(alpha, -static_cast<double>(k)) * err(alpha);
  for (int i = 0; i < 30; ++i) {
    alpha *= 0.1;
    const double v = std::pow(alpha, -static_cast<double>(k)) * err(alpha);
    if (v < prev * (1.0 - 1e-12)) return false;  // must grow as alpha drops
    if (v > 0.0 && std::abs(v - prev) <= 1e-9 * v) return true;  // positive limit
    prev = v;
  }
  return prev > 0.0;
}

namespace {

struct LandweberValueFn {
  std::vector<double> decay;  // (1 - sigma lambda)^2 per atom
  std::vector<double> w0;     // lambda^{2r} c^2 per atom
  double sigma, rnu;          // rnu = r + nu

  LandweberValueFn(const SpectralElement& x, double nu, double r, double s)
      : decay(x.size()), w0(x.size()), sigma(s), rnu(r + nu) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double one_minus = 1.0 - s * x.lambda(i);
      decay[i] = one_minus * one_minus;
      const double c = x.coeff(i);
      w0[i] = std::pow(x.lambda(i), 2.0 * r) * c * c;
    }
  }

  double eps(double k) const { return rnu / (sigma * (k + rnu)); }

  /// eps_k^{-(r+nu)} || (T*T)^r (x - x_k) || at an arbitrary real k >= 0.
  double at(double k) const {
    double s = 0.0;
    for (std::size_t i = 0; i < decay.size(); ++i) {
      s += (decay[i] > 0.0 ? std::exp(k * std::log(decay[i])) : (k == 0.0 ? 1.0 : 0.0)) * w0[i];
    }
    return std::pow(eps(k), -rnu) * std::sqrt(s);
  }
};

}  // namespace

RateReport delta_rate(const SpectralElement& x, double nu, double r, double sigma,
                      long k_max) {
  if (!(nu > 0.0) || !(r >= 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("delta_rate: need nu > 0, r >= 0, sigma > 0");
  }
  if (!x.empty() && sigma * x.lambda_max() > 1.0) {
    throw std::invalid_argument("delta_rate: sigma * ||T*T|| must not exceed 1");
  }
  RateReport rep;
  rep.nu = nu;
  rep.method = FilterSpec::Kind::landweber;
  const double tn = triple_norm(x, nu).value;
  const C2Result c2 = c2_constant();
  const C1Result c1 = c1_constant(nu, r, sigma, 1000);
  rep.lower = c1.value * std::sqrt(nu / (r + nu)) * tn;
  rep.upper = c2.c2 * tn;

  if (x.empty()) {
    rep.pass = true;
    rep.converged = true;
    return rep;
  }

  const LandweberValueFn fn(x, nu, r, sigma);
  const double rnu = r + nu;

  // Dense integer scan with multiplicative filter updates.
  const long dense = std::min<long>(std::max<long>(k_max, 1), 1024);
  std::vector<double> acc(fn.w0);
  double best = 0.0;
  long best_k = 0;
  double mass = 0.0;
  for (double v : acc) mass += v;
  for (long k = 0;; ++k) {
    const double v = std::pow(fn.eps(static_cast<double>(k)), -rnu) * std::sqrt(mass);
    if (v > best) {
      best = v;
      best_k = k;
    }
    if (k == dense) break;
    mass = 0.0;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      acc[i] *= fn.decay[i];
      mass += acc[i];
    }
  }

  // Geometric ladder beyond the dense range. The span keeps extending by a
  // factor of 10 until the running sup over the final decade matches the
  // running sup up to its start within 1e-9 relative.
  double span = std::max<double>(static_cast<double>(k_max), 10.0 * dense);
  const double cap = 1e8;
  double k_cursor = static_cast<double>(dense);
  bool converged = false;
  std::vector<std::pair<double, double>> trace;  // (k, running best), ascending
  trace.emplace_back(k_cursor, best);
  while (true) {
    while (k_cursor < span) {
      k_cursor = std::min(span, std::max(k_cursor * 1.1, k_cursor + 1.0));
      const long kk = static_cast<long>(std::llround(k_cursor));
      const double v = fn.at(static_cast<double>(kk));
      if (v > best) {
        best = v;
        best_k = kk;
      }
      trace.emplace_back(k_cursor, best);
    }
    double best_at_decade_start = trace.front().second;
    for (const auto& [kk, bb] : trace) {
      if (kk <= span / 10.0) best_at_decade_start = bb;
    }
    if (best <= best_at_decade_start * (1.0 + 1e-9)) {
      converged = true;
      break;
    }
    if (span >= cap) break;
    span *= 10.0;
  }

  // Integer polish around the ladder winner.
  if (best_k > dense) {
    const long wlo = std::max<long>(dense, static_cast<long>(best_k / 1.1) - 2);
    const long whi = static_cast<long>(best_k * 1.1) + 2;
    if (whi - wlo <= 4096) {
      for (long kk = wlo; kk <= whi; ++kk) {
        const double v = fn.at(static_cast<double>(kk));
        if (v > best) {
          best = v;
          best_k = kk;
        }
      }
    } else {
      double val = 0.0;
      const double arg = golden_max_log([&fn](double k) { return fn.at(k); },
                                        static_cast<double>(wlo),
                                        static_cast<double>(whi), 1e-12, &val);
      for (long kk : {static_cast<long>(std::floor(arg)), static_cast<long>(std::ceil(arg))}) {
        const double v = fn.at(static_cast<double>(kk));
        if (v > best) {
          best = v;
          best_k = kk;
        }
      }
    }
  }

  rep.sup_value = best;
  rep.arg = static_cast<double>(best_k);
  rep.converged = converged;
  const double slack = 1e-6 * std::max(rep.upper, 1e-300);
  rep.pass = rep.lower <= rep.sup_value + slack && rep.sup_value <= rep.upper + slack;
  return rep;
}

double landweber_rate_value(const SpectralElement& x, double nu, double r, double sigma,
                            long k) {
  if (!(nu > 0.0) || !(r >= 0.0) || !(sigma > 0.0) || k < 0) {
    throw std::invalid_argument("landweber_rate_value: bad parameters");
  }
  if (!x.empty() && sigma * x.lambda_max() > 1.0) {
    throw std::invalid_argument("landweber_rate_value: sigma * ||T*T|| must not exceed 1");
  }
  return LandweberValueFn(x, nu, r, sigma).at(static_cast<double>(k));
}

C1Result c1_constant(double nu, double r, double sigma, long k_max) {
  if (!(nu > 0.0) || !(r >= 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("c1_constant: need nu > 0, r >= 0, sigma > 0");
  }
  const double rnu = r + nu;
  const auto eps = [&](double k) { return rnu / (sigma * (k + rnu)); };
  const auto term = [&](long k) {
    const double kd = static_cast<double>(k);
    const double base = 1.0 - sigma * eps(kd);
    const double head = k == 0 ? 1.0 : std::pow(base, kd);  // empty product at k = 0
    return head * std::pow(eps(kd + 1.0) / eps(kd), rnu);
  };

  C1Result res;
  res.lower_bound = std::pow(sigma * eps(1.0) / 2.718281828459045235, rnu);
  res.value = term(0);
  res.arg_k = 0;
  long limit = std::max<long>(k_max, 1000);
  long k = 1;
  long rising = 0;
  while (k <= limit || rising < 64) {
    const double t = term(k);
    if (t < res.value) {
      res.value = t;
      res.arg_k = k;
      rising = 0;
    } else {
      ++rising;  // the tail increases monotonically toward e^{-(r+nu)}
    }
    ++k;
    if (k > 100 * limit) break;
  }
  if (res.value < res.lower_bound * (1.0 - 1e-12)) {
    throw std::logic_error("c1_constant: infimum fell below its proven lower bound");
  }
  return res;
}

double beta_ratio(double s, double a) {
  return std::exp(a * std::log((s + a) / a) + log_gamma(s + 1.0) + log_gamma(a + 1.0) -
                  log_gamma(s + a + 1.0));
}

C2Result c2_constant() {
  const auto ibar = [](double a) { return std::exp(-a * std::log(a) + log_gamma(a + 1.0)); };
  double value = 0.0;
  const double a_star = golden_max_log(ibar, 1e-6, 1.0, 1e-12, &value);
  C2Result res;
  res.a_star = a_star;
  res.ibar_star = value;
  res.c2 = std::sqrt(value);
  res.large_s_check = beta_ratio(1e6, a_star);
  return res;
}

}  // namespace regrates
