#include "regrates/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "regrates/builtin.hpp"
#include "regrates/distance.hpp"
#include "regrates/filters.hpp"
#include "regrates/interp.hpp"
#include "regrates/noisy.hpp"
#include "regrates/parallel.hpp"
#include "regrates/rates.hpp"
#include "regrates/rng.hpp"
#include "regrates/spectral.hpp"

namespace regrates::verify {

namespace {

constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kPi = 3.14159265358979323846;

CheckRecord near(std::string id, double lhs, double rhs, double tol) {
  CheckRecord c;
  c.id = std::move(id);
  c.lhs = lhs;
  c.rhs = rhs;
  c.tolerance = tol;
  c.pass = std::abs(lhs - rhs) <= tol;
  return c;
}

CheckRecord below(std::string id, double lhs, double rhs, double tol = 0.0) {
  CheckRecord c;
  c.id = std::move(id);
  c.lhs = lhs;
  c.rhs = rhs;
  c.tolerance = tol;
  c.pass = lhs <= rhs + tol;
  return c;
}

CheckRecord count_check(std::string id, long violations, long trials) {
  CheckRecord c;
  c.id = std::move(id) + " (violations/" + std::to_string(trials) + ")";
  c.lhs = static_cast<double>(violations);
  c.rhs = 0.0;
  c.tolerance = 0.0;
  c.pass = violations == 0;
  return c;
}

SpectralElement random_measure(Rng& rng, int max_atoms) {
  const int n = 1 + static_cast<int>(rng.uniform() * max_atoms);
  std::vector<double> lambdas(n), coeffs(n);
  bool nonzero = false;
  for (int i = 0; i < n; ++i) {
    lambdas[i] = rng.log_uniform(1e-3, 2.0);
    coeffs[i] = rng.uniform(-1.0, 1.0);
    nonzero = nonzero || coeffs[i] != 0.0;
  }
  if (!nonzero) coeffs[0] = 1.0;
  return SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs));
}

SpectralElement random_measure_exact(Rng& rng, int atoms) {
  std::vector<double> lambdas(atoms), coeffs(atoms);
  for (int i = 0; i < atoms; ++i) {
    lambdas[i] = rng.log_uniform(1e-3, 2.0);
    coeffs[i] = rng.uniform(-1.0, 1.0);
  }
  coeffs[0] += coeffs[0] == 0.0 ? 0.5 : 0.0;
  return SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs));
}

}  // namespace

int SuiteResult::failed() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

std::vector<CheckRecord> check_zeta_golden() {
  const SpectralProblem p = build(ExampleId::diag(100000));
  const SupResult tn = triple_norm(p.element, 1.0);
  std::vector<CheckRecord> out;
  out.push_back(near("zeta3.triple_norm_sq(diag 1e5, nu=1)", tn.value * tn.value,
                     kZeta3, 1e-8));
  out.push_back(near("zeta3.arg_sup_at_lambda_1", tn.arg_sup, 1.0, 0.0));
  return out;
}

std::vector<CheckRecord> check_landweber_example(long n) {
  std::vector<CheckRecord> out;
  const SpectralProblem p = build(ExampleId::diag(n));
  const SpectralElement& x = p.element;
  const double sigma = 1.0;

  const auto val_sq = [&](long k) {
    const double v = landweber_rate_value(x, 1.0, 0.0, sigma, k);
    return v * v;
  };
  out.push_back(near("lw.value_sq(k=0)", val_sq(0), 1.096 * 1.096, 1e-3));
  out.push_back(near("lw.value_sq(k=1)", val_sq(1), 0.5453 * 0.5453, 1e-3));
  out.push_back(near("lw.value_sq(k=2)", val_sq(2), 0.5475 * 0.5475, 1e-3));
  out.push_back(near("lw.value_sq(k=1e4)", val_sq(10000), 0.25, 1e-3));

  const C1Result c1 = c1_constant(1.0, 0.0, sigma, 1000);
  out.push_back(near("lw.c1", c1.value, 1.0 / 3.0, 1e-12));
  {
    CheckRecord c;
    c.id = "lw.c1_arg in {1,2}";
    c.lhs = static_cast<double>(c1.arg_k);
    c.rhs = 1.5;
    c.tolerance = 0.5;
    c.pass = c1.arg_k == 1 || c1.arg_k == 2;
    out.push_back(c);
  }
  out.push_back(below("lw.c1_lower_bound", c1.lower_bound, c1.value, 1e-15));

  const RateReport delta = delta_rate(x, 1.0, 0.0, sigma, 1024);
  out.push_back(below("lw.sandwich_lower", delta.lower, delta.sup_value, 1e-9));
  out.push_back(below("lw.sandwich_upper", delta.sup_value, delta.upper, 1e-9));
  out.push_back(near("lw.delta_is_k0", delta.sup_value * delta.sup_value, val_sq(0), 1e-12));
  return out;
}

std::vector<CheckRecord> check_constants() {
  const C2Result c2 = c2_constant();
  std::vector<CheckRecord> out;
  out.push_back(near("const.c2", c2.c2, 1.135, 2e-3));
  out.push_back(near("const.a_star", c2.a_star, 0.3164, 1e-3));
  out.push_back(near("const.ibar_star", c2.ibar_star, 1.288, 2e-3));
  out.push_back(near("const.large_s_limit", c2.large_s_check, c2.ibar_star, 1e-5));
  out.push_back(near("const.ibar(1)", std::exp(log_gamma(2.0)), 1.0, 1e-14));
  out.push_back(near("const.n_theta(0)", n_theta(0.0), 1.0, 0.0));
  out.push_back(near("const.n_theta(1)", n_theta(1.0), 1.0, 0.0));
  out.push_back(near("const.n_theta(1/2)", n_theta(0.5), std::sqrt(2.0), 1e-15));
  out.push_back(near("const.log_gamma(10)", log_gamma(10.0), std::log(362880.0), 1e-12));
  return out;
}

std::vector<CheckRecord> check_dirac_closed_forms() {
  std::vector<CheckRecord> out;
  const double lambda0 = 0.7;
  const SpectralProblem p = build(ExampleId::dirac(lambda0));
  const double gammas[5] = {0.5, 1.0, 1.5, 2.0, 3.0};
  const double fracs[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
  double worst = 0.0;
  for (double gamma : gammas) {
    for (double frac : fracs) {
      const double nu = frac * gamma;
      const double expect = std::pow(lambda0, -nu) / n_theta(frac);
      const double got = interp_norm(p.element, nu, gamma).value;
      worst = std::max(worst, std::abs(got - expect) / expect);
    }
  }
  out.push_back(below("dirac.interp_norm_worst_rel_err(5x5)", worst, 1e-9));

  const RateReport rate = tikhonov_rate(build(ExampleId::dirac(1.0)).element, 0.5, 1);
  out.push_back(near("dirac.tikhonov_rate(nu=1/2)", rate.sup_value, 0.5, 1e-9));
  return out;
}

std::vector<CheckRecord> check_powerlaw_interp() {
  const SpectralProblem p = build(ExampleId::powerlaw(0.5, 10000));
  const double v = interp_norm(p.element, 0.5, 1.0).value;
  std::vector<CheckRecord> out;
  out.push_back(near("powerlaw.interp_norm_sq(nu=1/2)", v * v, kPi / 2.0,
                     0.01 * kPi / 2.0));
  out.push_back(near("powerlaw.total_mass", p.element.norm_sq(), 1.0, 1e-10));
  return out;
}

std::vector<CheckRecord> check_propositions(std::uint64_t seed, int measures) {
  // Violation counters: ga_nu, infg, p_tik, p_tikk, p_lw, l_mu, nab, ncomm,
  // s_nu, xad, lw_es.
  constexpr int kCats = 11;
  std::vector<std::array<long, kCats>> viol(measures);
  std::vector<std::array<long, kCats>> trials(measures);

  parallel_for(measures, [&](std::size_t mi) {
    viol[mi].fill(0);
    trials[mi].fill(0);
    Rng rng(seed + 7919 * (mi + 1));
    const SpectralElement x = random_measure(rng, 50);
    const SpectralProblem prob = SpectralProblem::from_element(x);
    const double lam_max = x.lambda_max();
    const double sigma = 1.0 / lam_max;

    const auto tally = [&](int cat, bool ok) {
      ++trials[mi][cat];
      if (!ok) ++viol[mi][cat];
    };

    // ga-nu chain and the nu:2nu equivalence
    {
      const double nu = rng.uniform(0.0, 1.2);
      const double gamma = nu + rng.uniform(0.05, 1.5);
      const SandwichReport rep = sandwich_report(x, nu, gamma);
      tally(0, rep.chain_pass);
      tally(1, rep.equiv_pass);
      if (nu > 0.0) {
        // infg lower factor at an extra sampled gamma
        const double g2 = nu + rng.uniform(0.05, 2.0);
        const double lhs = triple_norm(x, nu).value / std::sqrt(2.0);
        const double rhs = interp_norm(x, nu, g2).value;
        tally(1, lhs <= rhs * (1.0 + 1e-9));
      }
    }

    // Tikhonov rate sandwich, single and iterated
    for (double nu : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      tally(2, tikhonov_rate(x, nu, 1).pass);
    }
    for (int k : {2, 3, 5}) {
      for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        tally(3, tikhonov_rate(x, f * k, k).pass);
      }
    }

    // Landweber rate sandwich
    for (double r : {0.0, 0.5, 1.0}) {
      const double nu = rng.uniform(0.3, 1.5);
      tally(4, delta_rate(x, nu, r, sigma, 1024).pass);
    }

    // measure tail bounds
    const DiscreteSpectralMeasure mu = DiscreteSpectralMeasure::from_element(x);
    for (int t = 0; t < 5; ++t) {
      const double nu = rng.uniform(0.1, 1.2);
      const double gamma = nu + rng.uniform(0.05, 1.5);
      const double r = rng.uniform(0.0, 1.0);
      const double cap = rng.log_uniform(x.lambda_min() / 10.0, lam_max * 10.0);
      tally(5, tail_bound_check(mu, nu, gamma, r, cap).pass);
    }

    // Young product bound
    for (int t = 0; t < 5; ++t) {
      const double a = std::exp(rng.uniform(-3.0, 3.0));
      const double b = std::exp(rng.uniform(-3.0, 3.0));
      const double theta = rng.uniform();
      const double nt = n_theta(theta);
      const double lhs = nt * nt * std::pow(a, 1.0 - theta) * std::pow(b, theta);
      tally(6, lhs <= (a + b) * (1.0 + 1e-12));
    }

    // commutation bound
    for (int t = 0; t < 5; ++t) {
      const double lambda = t == 0 ? 0.0 : rng.log_uniform(1e-3, 1e2);
      const double tt = rng.log_uniform(1e-3, 1e3);
      const double k = rng.uniform(0.5, 4.0);
      const double theta = rng.uniform(0.01, 0.99);
      const double alpha =
          std::pow(tt, 1.0 / k) * std::pow((1.0 - theta) / theta, 1.0 - 0.5 / k);
      const double nt = n_theta(theta);
      const double lhs = std::pow(nt, 2.0 * (1.0 - 2.0 * k)) *
                         std::pow(tt, 2.0 * (1.0 - theta)) /
                         (tt * tt + std::pow(lambda, 2.0 * k));
      const double rhs =
          std::pow(std::pow(alpha, 1.0 - theta) / (alpha + lambda), 2.0 * k);
      tally(7, lhs <= rhs * (1.0 + 1e-12));
    }

    // operator interpolation inequality specialized to inner products
    for (int t = 0; t < 3; ++t) {
      const double nu = rng.uniform(0.05, 1.0);
      const double gamma = nu + rng.uniform(0.05, 1.5);
      std::vector<double> w = rng.sphere(x.size(), 1.0);
      double inner = 0.0, quad = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        inner += x.coeff(i) * w[i];
        quad += std::pow(x.lambda(i), 2.0 * gamma) * w[i] * w[i];
      }
      const double rhs = n_theta(nu / gamma) * interp_norm(x, nu, gamma).value *
                         std::pow(std::sqrt(quad), nu / gamma);
      tally(8, std::abs(inner) <= rhs * (1.0 + 1e-9));
    }

    // Tikhonov noisy/noise-free splitting
    for (int t = 0; t < 3; ++t) {
      const double delta = x.norm() * rng.log_uniform(1e-4, 1e-1);
      const double alpha = rng.log_uniform(x.lambda_min() / 100.0, lam_max * 100.0);
      const NoisyData d = make_noise(prob, {}, delta, NoiseStrategy::random, rng.raw());
      const double lhs = tikhonov_noisy_error(prob, d, alpha, 1);
      const double rhs = tikhonov_error(x, alpha, 1) + 0.5 * delta / std::sqrt(alpha);
      tally(9, lhs <= rhs * (1.0 + 1e-12));
    }

    // Landweber noisy/noise-free splitting. The flat noise term delta
    // sqrt(k) presumes a step size sigma <= 1 (the general form carries
    // sqrt(sigma)); keep the step inside both constraints.
    {
      const double sigma_split = std::min(sigma, 1.0);
      const double delta = x.norm() * rng.log_uniform(1e-4, 1e-1);
      const NoisyData d = make_noise(prob, {}, delta, NoiseStrategy::random, rng.raw());
      for (long k : {1L, 5L, 25L, 125L}) {
        const double lhs = landweber_noisy_error(prob, d, sigma_split, k);
        const double rhs =
            regularization_error(
                x, FilterSpec::landweber(sigma_split, static_cast<int>(k))) +
            delta * std::sqrt(static_cast<double>(k));
        tally(10, lhs <= rhs * (1.0 + 1e-12));
      }
    }
  });

  std::array<long, kCats> v{}, n{};
  for (int mi = 0; mi < measures; ++mi) {
    for (int c = 0; c < kCats; ++c) {
      v[c] += viol[mi][c];
      n[c] += trials[mi][c];
    }
  }
  const char* names[kCats] = {
      "prop.ga_nu_chain",    "prop.infg_factors",    "prop.tik_sandwich",
      "prop.tikk_sandwich",  "prop.lw_sandwich",     "prop.measure_tail",
      "prop.young_product",  "prop.commutation",     "prop.inner_product_interp",
      "prop.tik_splitting",  "prop.lw_splitting"};
  std::vector<CheckRecord> out;
  for (int c = 0; c < kCats; ++c) out.push_back(count_check(names[c], v[c], n[c]));
  return out;
}

std::vector<CheckRecord> check_distance_identities(std::uint64_t seed) {
  constexpr int kElems = 20;
  std::vector<long> de_viol(kElems, 0), conj_viol(kElems, 0);
  parallel_for(kElems, [&](std::size_t ei) {
    Rng rng(seed + 104729 * (ei + 1));
    const SpectralElement x = random_measure_exact(rng, 20);
    for (double theta : {0.25, 0.5, 0.75}) {
      if (!d_e_identity(x, theta, 1.0, 1e-4).pass) ++de_viol[ei];
    }
    const double lo = x.lambda_min() / 100.0;
    const double hi = x.lambda_max() * 100.0;
    for (int ti = 0; ti < 20; ++ti) {
      const double t = lo * std::pow(hi / lo, (ti + 0.5) / 20.0);
      if (!conjugate_equivalence_check(x, 1.0, t, 1e-6).pass) ++conj_viol[ei];
    }
  });
  long de = 0, conj = 0;
  for (int i = 0; i < kElems; ++i) {
    de += de_viol[i];
    conj += conj_viol[i];
  }
  std::vector<CheckRecord> out;
  out.push_back(count_check("dist.d_e_identity", de, kElems * 3));
  out.push_back(count_check("dist.conjugate_duality", conj, kElems * 20));
  return out;
}

namespace {

/// Per-delta worst error over the worst-aligned direction plus 32 seeded
/// random directions, under the a priori Tikhonov rule.
FitResult apriori_supnoise_fit(const SpectralProblem& p, std::span<const double> deltas,
                               std::uint64_t seed) {
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    const double alpha = apriori_alpha(p.element, delta);
    double worst = 0.0;
    for (int trial = 0; trial <= 32; ++trial) {
      const NoisyData d =
          make_noise(p, {}, delta,
                     trial == 0 ? NoiseStrategy::worst_aligned : NoiseStrategy::random,
                     seed + 100 * i + trial);
      worst = std::max(worst, tikhonov_noisy_error(p, d, alpha, 1));
    }
    pairs.emplace_back(delta, worst);
  }
  return rate_exponent_fit(pairs);
}

}  // namespace

std::vector<CheckRecord> check_noisy_end_to_end(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  const std::vector<double> deltas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

  {
    const SpectralProblem p = build(ExampleId::diag(100000));
    const NoisySweep sweep = landweber_discrepancy_sweep(p, 1.0, deltas, 1.5, 1.0,
                                                         NoiseStrategy::random, seed);
    out.push_back(near("noisy.lw_error_slope", sweep.error_fit.slope, 2.0 / 3.0, 0.05));
    out.push_back(near("noisy.lw_kbar_slope", sweep.parameter_fit.slope, -2.0 / 3.0, 0.1));
  }

  {
    // The rate-1/2 instance: the power-law measure with exponent 1/2, whose
    // noise-free Tikhonov error decays like sqrt(alpha).
    const SpectralProblem p = build(ExampleId::powerlaw(0.5, 10000));
    const FitResult fit = apriori_supnoise_fit(p, deltas, seed + 1);
    out.push_back(near("noisy.apriori_slope(powerlaw nu=1/2)", fit.slope, 0.5, 0.05));

    const QuasioptReport q = quasiopt_ratio(p, FilterSpec::Kind::tikhonov, 0.5, deltas,
                                            NoiseStrategy::random, seed + 2);
    out.push_back(below("noisy.quasiopt_ratio(powerlaw)", q.max_ratio, 2.0));
  }

  {
    // A Dirac atom has noise-free rate 1 (the Tikhonov qualification), so
    // the same rule realizes the saturated slope 2/3 there.
    const SpectralProblem p = build(ExampleId::dirac(1.0));
    const FitResult fit = apriori_supnoise_fit(p, deltas, seed + 3);
    out.push_back(near("noisy.apriori_slope(dirac, saturated)", fit.slope, 2.0 / 3.0, 0.08));

    const QuasioptReport q = quasiopt_ratio(p, FilterSpec::Kind::tikhonov, 0.5, deltas,
                                            NoiseStrategy::random, seed + 4);
    out.push_back(below("noisy.quasiopt_ratio(dirac)", q.max_ratio, 2.0));
  }

  return out;
}

std::vector<CheckRecord> check_bvp_stability() {
  const SpectralProblem p1 = build(ExampleId::bvp_sign(1 << 12));
  const SpectralProblem p2 = build(ExampleId::bvp_sign(1 << 13));
  std::vector<CheckRecord> out;

  const double s1_q = tikhonov_rate(p1.element, 0.25, 1).sup_value;
  const double s2_q = tikhonov_rate(p2.element, 0.25, 1).sup_value;
  out.push_back(below("bvp.rate_quarter_stable(rel change)",
                      std::abs(s2_q - s1_q) / s1_q, 0.01));

  const double s1_h = tikhonov_rate(p1.element, 0.3, 1).sup_value;
  const double s2_h = tikhonov_rate(p2.element, 0.3, 1).sup_value;
  CheckRecord grow;
  grow.id = "bvp.rate_0.3_grows(rel change)";
  grow.lhs = (s2_h - s1_h) / s1_h;
  grow.rhs = 0.05;
  grow.pass = grow.lhs > grow.rhs;
  out.push_back(grow);
  return out;
}

std::vector<CheckRecord> check_variational(std::uint64_t seed) {
  constexpr int kInstances = 10;
  long viol = 0;
  double worst_gap = 0.0;
  for (int i = 0; i < kInstances; ++i) {
    Rng rng(seed + 31337 * (i + 1));
    const double l1 = rng.log_uniform(1e-2, 1.0);
    double l2 = rng.log_uniform(1e-2, 1.0);
    if (std::abs(l2 - l1) < 1e-6 * l1) l2 = 2.0 * l1;
    const double c1 = rng.uniform(0.2, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    const double c2 = rng.uniform(0.2, 1.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
    const SpectralElement x = SpectralElement::from_atoms(
        std::vector<double>{l1, l2}, std::vector<double>{c1, c2});
    const double gamma = rng.uniform(0.3, 2.0);
    const double nu = rng.uniform(0.15, 0.9) * gamma;

    const double target = n_theta(nu / gamma) * interp_norm(x, nu, gamma).value;

    // Brute-force oracle: 1e6-point sweep of the angle parameterizing the
    // unit vector in the two-atom span.
    const double g1 = std::pow(x.lambda(0), 2.0 * gamma);
    const double g2 = std::pow(x.lambda(1), 2.0 * gamma);
    const double e = nu / (2.0 * gamma);
    double oracle = 0.0;
    constexpr int kAngles = 1000000;
    for (int a = 0; a < kAngles; ++a) {
      const double phi = kPi * a / kAngles;
      const double w1 = std::cos(phi), w2 = std::sin(phi);
      const double quad = g1 * w1 * w1 + g2 * w2 * w2;
      const double inner = std::abs(x.coeff(0) * w1 + x.coeff(1) * w2);
      oracle = std::max(oracle, std::pow(quad, -e) * inner);
    }

    const VariationalResult vr = variational_sup(x, nu, gamma, 32, seed + i);
    const double gap_oracle = std::abs(oracle - target) / target;
    const double gap_ascent = std::abs(vr.sup.value - target) / target;
    worst_gap = std::max({worst_gap, gap_oracle, gap_ascent});
    if (gap_oracle > 1e-3 || gap_ascent > 1e-3) ++viol;
  }
  std::vector<CheckRecord> out;
  out.push_back(count_check("varsup.two_atom_matches_target", viol, kInstances));
  out.push_back(below("varsup.worst_rel_gap", worst_gap, 1e-3));
  return out;
}

SuiteResult run_suite(const std::string& suite, std::uint64_t seed) {
  SuiteResult res;
  res.suite = suite;
  res.seed = seed;
  const auto append = [&res](std::vector<CheckRecord> v) {
    for (auto& c : v) res.checks.push_back(std::move(c));
  };

  const bool all = suite == "all";
  if (all || suite == "constants") {
    append(check_constants());
  }
  if (all || suite == "examples") {
    append(check_zeta_golden());
    append(check_landweber_example());
    append(check_dirac_closed_forms());
    append(check_powerlaw_interp());
    append(check_noisy_end_to_end(seed));
    append(check_bvp_stability());
  }
  if (all || suite == "propositions") {
    append(check_propositions(seed, 100));
    append(check_distance_identities(seed));
    append(check_variational(seed));
  }
  if (res.checks.empty() && !all) {
    throw std::invalid_argument(
        "run_suite: unknown suite '" + suite +
        "' (expected constants, propositions, examples or all)");
  }
  return res;
}

}  // namespace regrates::verify
