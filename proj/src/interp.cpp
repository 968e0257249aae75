#include "regrates/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "regrates/rng.hpp"

namespace regrates {

double n_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("n_theta: theta must lie in [0, 1]");
  }
  if (theta == 0.0 || theta == 1.0) return 1.0;
  const double log_inv_sq =
      theta * std::log(theta) + (1.0 - theta) * std::log(1.0 - theta);
  return std::exp(-0.5 * log_inv_sq);
}

double hilbert_norm_sq(const SpectralElement& x, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("hilbert_norm: gamma must be >= 0");
  if (gamma == 0.0) return x.norm_sq();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = x.coeff(i);
    s += std::pow(x.lambda(i), -2.0 * gamma) * c * c;
  }
  return s;
}

double hilbert_norm(const SpectralElement& x, double gamma) {
  return std::sqrt(hilbert_norm_sq(x, gamma));
}

SupResult triple_norm(const SpectralElement& x, double nu) {
  if (!(nu >= 0.0)) throw std::invalid_argument("triple_norm: nu must be >= 0");
  SupResult res;
  res.converged = true;
  if (x.empty()) {
    res.value = 0.0;
    res.arg_sup = 1.0;
    return res;
  }
  // t -> mu([0,t)) is a left-continuous step function and t^{-2nu} strictly
  // decreases, so on each interval (lambda_i, lambda_{i+1}] the supremum of
  // t^{-2nu} mu([0,t)) is the limit t -> lambda_i from above, which is
  // lambda_i^{-2nu} mu([0, lambda_i]).
  double prefix = 0.0;
  double best = 0.0, best_arg = x.lambda(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = x.coeff(i);
    prefix += c * c;
    const double v = std::pow(x.lambda(i), -2.0 * nu) * prefix;
    if (v > best) {
      best = v;
      best_arg = x.lambda(i);
    }
  }
  res.value = std::sqrt(best);
  res.arg_sup = best_arg;
  return res;
}

double k_functional_sq(const SpectralElement& x, double gamma, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("k_functional: t must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("k_functional: gamma must be positive");
  const double t2 = t * t;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double c = x.coeff(i);
    s += t2 / (t2 + std::pow(x.lambda(i), 2.0 * gamma)) * c * c;
  }
  return s;
}

double k_functional(const SpectralElement& x, double gamma, double t) {
  return std::sqrt(k_functional_sq(x, gamma, t));
}

namespace {

/// Shares the per-atom lambda^{2 gamma} across the many grid evaluations of
/// t -> t^{-2 theta} K_t^2.
struct InterpObjective {
  std::vector<double> lam2g;
  std::vector<double> w;
  double theta;  // nu / gamma

  InterpObjective(const SpectralElement& x, double nu, double gamma)
      : lam2g(x.size()), w(x.size()), theta(nu / gamma) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      lam2g[i] = std::pow(x.lambda(i), 2.0 * gamma);
      w[i] = x.coeff(i) * x.coeff(i);
    }
  }

  double operator()(double t) const {
    const double t2 = t * t;
    double s = 0.0;
    for (std::size_t i = 0; i < lam2g.size(); ++i) {
      s += w[i] / (t2 + lam2g[i]);
    }
    // t^{-2 theta} * t^2 * sum w/(t^2+l^{2g}), as sqrt
    return std::sqrt(std::pow(t, 2.0 - 2.0 * theta) * s);
  }
};

}  // namespace

SupResult interp_norm(const SpectralElement& x, double nu, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("interp_norm: gamma must be positive");
  if (!(nu >= 0.0) || nu > gamma) {
    throw std::invalid_argument("interp_norm: need 0 <= nu <= gamma");
  }
  SupResult res;
  if (x.empty()) {
    res.converged = true;
    res.arg_sup = 1.0;
    return res;
  }
  if (nu == 0.0) {
    // sup attained in the limit t -> infinity with value ||x||.
    res.value = x.norm();
    res.arg_sup = std::numeric_limits<double>::infinity();
    res.converged = true;
    return res;
  }
  if (nu == gamma) {
    // sup attained in the limit t -> 0 with value ||x||_gamma.
    res.value = hilbert_norm(x, gamma);
    res.arg_sup = 0.0;
    res.converged = true;
    return res;
  }
  const InterpObjective obj(x, nu, gamma);
  const double lo = std::pow(x.lambda_min(), gamma) / kGridPad;
  const double hi = std::pow(x.lambda_max(), gamma) * kGridPad;
  return sup_log_grid([&obj](double t) { return obj(t); }, lo, hi);
}

SandwichReport sandwich_report(const SpectralElement& x, double nu, double gamma,
                               double rel_tol) {
  if (!(nu >= 0.0) || !(gamma > nu)) {
    throw std::invalid_argument("sandwich_report: need 0 <= nu < gamma");
  }
  SandwichReport rep;
  rep.nu = nu;
  rep.gamma = gamma;
  rep.tolerance = rel_tol;
  const double interp = interp_norm(x, nu, gamma).value;
  rep.a = std::sqrt(1.0 - nu / gamma) * interp;
  rep.b = triple_norm(x, nu).value;
  rep.c = n_theta(nu / gamma) * interp;
  rep.d = hilbert_norm(x, nu);
  const double tstar_sq = x.empty() ? 0.0 : x.lambda_max();
  rep.e = std::pow(tstar_sq, gamma - nu) * hilbert_norm(x, gamma);
  rep.half_norm = nu > 0.0 ? interp_norm(x, nu, 2.0 * nu).value : x.norm();

  const double scale = std::max({rep.a, rep.b, rep.c, rep.d, rep.e, 1e-300});
  const double slack = rel_tol * scale;
  rep.chain_pass = (rep.a <= rep.b + slack) && (rep.b <= rep.c + slack) &&
                   (rep.c <= rep.d + slack) && (rep.d <= rep.e + slack);
  rep.equiv_pass = (rep.b / std::sqrt(2.0) <= rep.half_norm + slack) &&
                   (rep.half_norm <= std::sqrt(2.0) * rep.b + slack);
  rep.pass = rep.chain_pass && rep.equiv_pass;
  return rep;
}

TailBoundReport tail_bound_check(const DiscreteSpectralMeasure& mu, double nu,
                                 double gamma, double r, double lambda_cap,
                                 double rel_tol) {
  if (!(nu > 0.0) || !(gamma > nu)) {
    throw std::invalid_argument("tail_bound_check: need gamma > nu > 0");
  }
  if (!(r >= 0.0) || !(lambda_cap > 0.0)) {
    throw std::invalid_argument("tail_bound_check: need r >= 0 and Lambda > 0");
  }
  TailBoundReport rep;

  double mass_below = 0.0, tail_int = 0.0, low_int = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double l = mu.lambdas[i];
    const double w = mu.weights[i];
    if (l < lambda_cap) {
      mass_below += w;
      low_int += std::pow(l, -2.0 * r) * w;
    } else {
      tail_int += std::pow(l, -2.0 * gamma) * w;
    }
  }

  SpectralElement x;
  {
    std::vector<double> cs(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) cs[i] = std::sqrt(mu.weights[i]);
    std::vector<double> ls(mu.lambdas);
    x = SpectralElement::from_atoms(std::move(ls), std::move(cs));
  }
  const double tn_nu = triple_norm(x, nu).value;
  const double tn_rnu = triple_norm(x, r + nu).value;

  rep.lhs_high = mass_below + std::pow(lambda_cap, 2.0 * gamma) * tail_int;
  rep.rhs_high =
      gamma / (gamma - nu) * std::pow(lambda_cap, 2.0 * nu) * tn_nu * tn_nu;
  rep.lhs_low = low_int;
  rep.rhs_low =
      (r + nu) / nu * std::pow(lambda_cap, 2.0 * nu) * tn_rnu * tn_rnu;

  rep.pass_high = rep.lhs_high <= rep.rhs_high * (1.0 + rel_tol) + 1e-300;
  rep.pass_low = rep.lhs_low <= rep.rhs_low * (1.0 + rel_tol) + 1e-300;
  rep.pass = rep.pass_high && rep.pass_low;
  return rep;
}

namespace {

/// Objective of the variational supremum over unit coefficient vectors w:
/// F(w) = (sum lambda^{2 gamma} w^2)^{-nu/(2 gamma)} |sum c w|.
struct VariationalObjective {
  std::vector<double> lam2g;
  std::vector<double> c;
  double exponent;  // nu / (2 gamma)

  double eval(const std::vector<double>& w) const {
    double quad = 0.0, inner = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      quad += lam2g[i] * w[i] * w[i];
      inner += c[i] * w[i];
    }
    if (quad <= 0.0) return 0.0;
    return std::pow(quad, -exponent) * std::abs(inner);
  }

  void grad(const std::vector<double>& w, std::vector<double>* g) const {
    double quad = 0.0, inner = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      quad += lam2g[i] * w[i] * w[i];
      inner += c[i] * w[i];
    }
    const double q_pow = std::pow(quad, -exponent);
    const double sgn = inner >= 0.0 ? 1.0 : -1.0;
    const double f = q_pow * std::abs(inner);
    for (std::size_t i = 0; i < w.size(); ++i) {
      (*g)[i] = q_pow * sgn * c[i] - 2.0 * exponent * f / quad * lam2g[i] * w[i];
    }
  }
};

void normalize(std::vector<double>* w) {
  double s = 0.0;
  for (double v : *w) s += v * v;
  s = std::sqrt(s);
  for (double& v : *w) v /= s;
}

double ascend(const VariationalObjective& obj, std::vector<double> w, int max_iter) {
  normalize(&w);
  double f = obj.eval(w);
  std::vector<double> g(w.size()), trial(w.size());
  double step = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    obj.grad(w, &g);
    // project onto the tangent space of the sphere
    double gw = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) gw += g[i] * w[i];
    double gnorm = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      g[i] -= gw * w[i];
      gnorm += g[i] * g[i];
    }
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-15 * std::max(1.0, std::abs(f))) break;

    bool improved = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < w.size(); ++i) trial[i] = w[i] + step * g[i];
      normalize(&trial);
      const double ft = obj.eval(trial);
      if (ft > f) {
        w = trial;
        f = ft;
        improved = true;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return f;
}

}  // namespace

VariationalResult variational_sup(const SpectralElement& x, double nu, double gamma,
                                  int random_starts, std::uint64_t seed) {
  if (!(gamma > 0.0) || !(nu >= 0.0) || nu > gamma) {
    throw std::invalid_argument("variational_sup: need 0 <= nu <= gamma");
  }
  if (x.empty() || x.norm_sq() == 0.0) {
    throw std::invalid_argument("variational_sup: element must be nonzero");
  }
  const std::size_t n = x.size();

  VariationalObjective obj;
  obj.lam2g.resize(n);
  obj.c.resize(n);
  obj.exponent = nu / (2.0 * gamma);
  for (std::size_t i = 0; i < n; ++i) {
    obj.lam2g[i] = std::pow(x.lambda(i), 2.0 * gamma);
    obj.c[i] = x.coeff(i);
  }

  double best = 0.0;
  const int iters = 400;

  // Deterministic starts: w aligned with x, and the best single atom.
  {
    std::vector<double> w(obj.c);
    if (x.norm_sq() > 0.0) best = std::max(best, ascend(obj, w, iters));
  }
  {
    std::size_t arg = 0;
    double bv = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = std::pow(x.lambda(i), -2.0 * nu) * std::abs(x.coeff(i));
      if (v > bv) {
        bv = v;
        arg = i;
      }
    }
    std::vector<double> w(n, 0.0);
    w[arg] = 1.0;
    best = std::max(best, ascend(obj, w, iters));
  }

  Rng rng(seed);
  for (int s = 0; s < random_starts; ++s) {
    best = std::max(best, ascend(obj, rng.sphere(n, 1.0), iters));
  }

  VariationalResult out;
  out.sup.value = best;
  out.sup.converged = true;
  out.sup.refinements = random_starts + 2;
  out.target = n_theta(nu / gamma) * interp_norm(x, nu, gamma).value;
  out.gap_rel = out.target > 0.0 ? (out.target - best) / out.target : 0.0;
  return out;
}

}  // namespace regrates
