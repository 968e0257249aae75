#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "regrates/builtin.hpp"
#include "regrates/filters.hpp"
#include "regrates/interp.hpp"
#include "regrates/noisy.hpp"
#include "regrates/rates.hpp"
#include "regrates/rng.hpp"

using namespace regrates;

TEST_CASE("make_noise") {
  const auto p = build(ExampleId::diag(100));
  const NoisyData zero = make_noise(p, {}, 0.0, NoiseStrategy::random, 1);
  for (double e : zero.noise) CHECK(e == 0.0);

  const NoisyData w = make_noise(p, {}, 0.01, NoiseStrategy::worst_aligned, 1);
  double norm = 0.0;
  for (double e : w.noise) norm += e * e;
  CHECK(std::sqrt(norm) == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(w.noise[0] != 0.0);  // atoms ascend, slowest mode first
  for (std::size_t i = 1; i < w.noise.size(); ++i) CHECK(w.noise[i] == 0.0);

  const NoisyData r1 = make_noise(p, {}, 0.01, NoiseStrategy::random, 7);
  const NoisyData r2 = make_noise(p, {}, 0.01, NoiseStrategy::random, 7);
  const NoisyData r3 = make_noise(p, {}, 0.01, NoiseStrategy::random, 8);
  CHECK(r1.noise == r2.noise);  // seeded reproducibility
  CHECK(r1.noise != r3.noise);
  norm = 0.0;
  for (double e : r1.noise) norm += e * e;
  CHECK(std::sqrt(norm) == doctest::Approx(0.01).epsilon(1e-14));

  const auto empty = SpectralProblem::from_element(SpectralElement{});
  CHECK_THROWS_AS(make_noise(empty, {}, 0.1, NoiseStrategy::random, 1),
                  std::invalid_argument);
}

TEST_CASE("apriori_alpha single atom against scalar bisection oracle") {
  const double lambda = 0.8, c = 1.6;
  const auto x = SpectralElement::from_atoms(std::vector<double>{lambda},
                                             std::vector<double>{c});
  for (double delta : {1e-1, 1e-3, 1e-6}) {
    const double alpha = apriori_alpha(x, delta);
    // solve sqrt(a) * c a/(a+lambda) = delta/2 in long double
    long double lo = 1e-30L, hi = 1e10L;
    for (int i = 0; i < 200; ++i) {
      const long double mid = std::sqrt(lo * hi);
      const long double g = std::sqrt(mid) * c * mid / (mid + (long double)lambda);
      (g >= (long double)(delta) / 2.0L ? hi : lo) = mid;
    }
    CHECK(alpha == doctest::Approx(static_cast<double>(std::sqrt(lo * hi))).epsilon(1e-9));
    // defining relation
    CHECK(std::sqrt(alpha) * tikhonov_error(x, alpha, 1) ==
          doctest::Approx(delta / 2.0).epsilon(1e-9));
  }
  // monotone limit
  CHECK(apriori_alpha(x, 1e-9) < apriori_alpha(x, 1e-3));
  CHECK_THROWS_AS(apriori_alpha(x, 1e12), std::invalid_argument);
}

TEST_CASE("apriori root map is strictly increasing") {
  Rng rng(53);
  std::vector<double> l(30), c(30);
  for (int i = 0; i < 30; ++i) {
    l[i] = rng.log_uniform(1e-3, 2.0);
    c[i] = rng.uniform(-1.0, 1.0);
  }
  const auto x = SpectralElement::from_atoms(std::move(l), std::move(c));
  double prev = 0.0;
  for (double a = 1e-8; a < 1e6; a *= 1.5) {
    const double g = std::sqrt(a) * tikhonov_error(x, a, 1);
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("apriori_alpha on the diag example against an extended-precision oracle") {
  const auto x = build(ExampleId::diag(10000)).element;
  const double alpha = apriori_alpha(x, 1e-3);
  CHECK(std::sqrt(alpha) * tikhonov_error(x, alpha, 1) ==
        doctest::Approx(5e-4).epsilon(1e-10));

  // independent long-double bisection on the same defining equation
  const auto g = [&x](long double a) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const long double q = a / (a + (long double)x.lambda(i));
      s += q * q * (long double)x.coeff(i) * (long double)x.coeff(i);
    }
    return std::sqrt(a) * std::sqrt(s);
  };
  long double lo = 1e-20L, hi = 1e8L;
  for (int i = 0; i < 120; ++i) {
    const long double mid = std::sqrt(lo * hi);
    (g(mid) >= 5e-4L ? hi : lo) = mid;
  }
  CHECK(alpha == doctest::Approx(static_cast<double>(std::sqrt(lo * hi))).epsilon(1e-9));
}

TEST_CASE("optimal_alpha") {
  const auto p = build(ExampleId::diag(200));
  // delta = 0: error decreases toward zero, so the minimum sits at the low
  // end of the alpha grid
  const NoisyData clean = make_noise(p, {}, 0.0, NoiseStrategy::random, 1);
  const OptimalAlphaResult opt0 = optimal_alpha(p, clean);
  CHECK(opt0.error < 1e-5);
  CHECK(opt0.alpha <= p.element.lambda_min() * 1.1e-4);

  // single atom: the optimum can sit on the grid boundary (the noise floor
  // is approached as alpha -> 0), so compare against a dense scan of the
  // same grid range
  const auto single = build(ExampleId::dirac(0.5));
  const NoisyData d = make_noise(single, {}, 0.05, NoiseStrategy::worst_aligned, 1);
  const OptimalAlphaResult opt = optimal_alpha(single, d);
  double best_err = 1e300;
  for (double a = single.element.lambda_min() * 1e-4;
       a <= single.element.lambda_max() * 1e4; a *= 1.01) {
    best_err = std::min(best_err, tikhonov_noisy_error(single, d, a, 1));
  }
  CHECK(opt.error <= best_err * (1.0 + 1e-9));

  // worst-aligned noise can only make the optimum worse than random noise
  Rng rng(59);
  int wins = 0, trials = 10;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> l(15), c(15);
    for (int i = 0; i < 15; ++i) {
      l[i] = rng.log_uniform(1e-3, 1.0);
      c[i] = rng.uniform(-1.0, 1.0);
    }
    const auto prob = SpectralProblem::from_element(SpectralElement::from_atoms(l, c));
    const double delta = 0.01 * prob.element.norm();
    const NoisyData dw = make_noise(prob, {}, delta, NoiseStrategy::worst_aligned, 1);
    const NoisyData dr = make_noise(prob, {}, delta, NoiseStrategy::random, 100 + t);
    if (optimal_alpha(prob, dw).error >= optimal_alpha(prob, dr).error) ++wins;
  }
  CHECK(wins >= 8);  // adversarial direction dominates generically
}

TEST_CASE("discrepancy_stop") {
  const auto p = build(ExampleId::diag(5000));
  // huge delta: k = 0 already satisfies the principle
  {
    NoisyData d = make_noise(p, {}, 10.0, NoiseStrategy::random, 3);
    const DiscrepancyResult res = discrepancy_stop(p, d, 1.5, 1.0, 100);
    CHECK(res.k_bar == 0);
  }
  // single atom closed form: kbar = ceil(log(tau delta/|g|) / log(1-sigma l))
  {
    const double lambda = 0.3, c = 1.0, delta = 1e-3, tau = 1.5, sigma = 1.0;
    const auto single = SpectralProblem::from_element(SpectralElement::from_atoms(
        std::vector<double>{lambda}, std::vector<double>{c}));
    NoisyData d;
    d.clean = {std::sqrt(lambda) * c};
    d.noise = {0.0};
    d.delta = delta;
    const DiscrepancyResult res = discrepancy_stop(single, d, tau, sigma, 1000);
    const double g = std::sqrt(lambda) * c;
    const long expect = static_cast<long>(
        std::ceil(std::log(tau * delta / g) / std::log(1.0 - sigma * lambda)));
    CHECK(res.k_bar == expect);
    CHECK(res.residual <= tau * delta);
  }
  // trigger sufficiency: once the clean residual drops below delta (tau - 1),
  // the noisy criterion holds at that index
  {
    const double delta = 1e-2, tau = 1.5, sigma = 1.0;
    NoisyData d = make_noise(p, {}, delta, NoiseStrategy::random, 9);
    const DiscrepancyResult res = discrepancy_stop(p, d, tau, sigma, 100000);
    NoisyData clean = d;
    clean.noise.assign(clean.noise.size(), 0.0);
    for (long k = 0; k <= 3 * res.k_bar + 10; k += std::max(1L, res.k_bar / 7)) {
      const double clean_res = landweber_noisy_residual(p, clean, sigma, k);
      if (clean_res <= delta * (tau - 1.0)) {
        CHECK(landweber_noisy_residual(p, d, sigma, k) <= tau * delta);
      }
    }
    // stopped-error chain at the stopping index (r = 0, eps at kbar)
    const double nu = 1.0;
    const double eps = nu / (sigma * (res.k_bar + nu));
    const double tn = triple_norm(p.element, nu).value;
    const double clean_err =
        regularization_error(p.element, FilterSpec::landweber(sigma, static_cast<int>(res.k_bar)));
    const double clean_res = landweber_noisy_residual(p, clean, sigma, res.k_bar);
    CHECK(clean_err * clean_err <=
          std::pow(eps, 2.0 * nu) * tn * tn + clean_res * clean_res / eps + 1e-12);
  }
  // cap exceeded -> diagnostic
  {
    NoisyData d = make_noise(p, {}, 1e-9, NoiseStrategy::random, 4);
    CHECK_THROWS_AS(discrepancy_stop(p, d, 1.0001, 1.0, 10), std::runtime_error);
  }
}

TEST_CASE("landweber error splitting") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> l(20), c(20);
    for (int i = 0; i < 20; ++i) {
      l[i] = rng.log_uniform(1e-3, 2.0);
      c[i] = rng.uniform(-1.0, 1.0);
    }
    const auto p = SpectralProblem::from_element(SpectralElement::from_atoms(l, c));
    const double sigma_max = default_landweber_sigma(p);
    const double delta = 0.01 * p.element.norm();
    const NoisyData d = make_noise(p, {}, delta, NoiseStrategy::random, 70 + trial);
    for (long k : {1L, 4L, 16L, 64L, 256L}) {
      // flat form delta sqrt(k) for sigma <= 1
      const double s1 = std::min(sigma_max, 1.0);
      CHECK(landweber_noisy_error(p, d, s1, k) <=
            regularization_error(p.element, FilterSpec::landweber(s1, (int)k)) +
                delta * std::sqrt((double)k) + 1e-12);
      // general form carries sqrt(sigma) (the flat form normalizes sigma=1)
      CHECK(landweber_noisy_error(p, d, sigma_max, k) <=
            regularization_error(p.element, FilterSpec::landweber(sigma_max, (int)k)) +
                delta * std::sqrt(sigma_max * (double)k) + 1e-12);
    }
  }
}

TEST_CASE("sweeps accept a zero noise level as the exact-data row") {
  const auto p = build(ExampleId::diag(500));
  const std::vector<double> deltas = {1e-1, 1e-2, 1e-3, 0.0};
  const NoisySweep tik = tikhonov_apriori_sweep(p, deltas, NoiseStrategy::random, 3);
  REQUIRE(tik.rows.size() == 4);
  CHECK(tik.rows.back().error == 0.0);
  CHECK(tik.rows.back().parameter == 0.0);
  CHECK(tik.error_fit.slope != 0.0);  // fitted on the three positive levels

  const NoisySweep lw =
      landweber_discrepancy_sweep(p, 1.0, deltas, 1.5, 1.0, NoiseStrategy::random, 3);
  REQUIRE(lw.rows.size() == 4);
  CHECK(lw.rows.back().error == 0.0);
}

TEST_CASE("rate_exponent_fit") {
  // exact synthetic power law
  std::vector<std::pair<double, double>> pairs;
  for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) pairs.emplace_back(d, 3.0 * std::pow(d, 2.0 / 3.0));
  const FitResult fit = rate_exponent_fit(pairs);
  CHECK(fit.slope == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(rate_exponent_fit(std::vector<std::pair<double, double>>{{1.0, 1.0}}),
                  std::invalid_argument);
  std::vector<std::pair<double, double>> bad = {{1e-1, 1.0}, {1e-2, -1.0}, {1e-3, 1.0}};
  CHECK_THROWS_AS(rate_exponent_fit(bad), std::invalid_argument);
  std::vector<std::pair<double, double>> increasing = {{1e-3, 1.0}, {1e-2, 1.0}, {1e-1, 1.0}};
  CHECK_THROWS_AS(rate_exponent_fit(increasing), std::invalid_argument);
}

TEST_CASE("quasiopt ratio on dirac stays below 2") {
  const auto p = build(ExampleId::dirac(1.0));
  const std::vector<double> deltas = {1e-1, 1e-2, 1e-3};
  const QuasioptReport q = quasiopt_ratio(p, FilterSpec::Kind::tikhonov, 0.5, deltas,
                                          NoiseStrategy::random, 11);
  CHECK(q.max_ratio <= 2.0);
  CHECK(q.rhs == doctest::Approx(0.5).epsilon(1e-9));
  // nu = 0 degenerates to sup error <= ||x||
  const QuasioptReport q0 = quasiopt_ratio(p, FilterSpec::Kind::tikhonov, 0.0, deltas,
                                           NoiseStrategy::random, 11);
  for (const auto& row : q0.rows) CHECK(row.lhs <= p.element.norm() * 2.0);
}

TEST_CASE("quasiopt ratio landweber on the diag example") {
  const auto p = build(ExampleId::diag(20000));
  const std::vector<double> deltas = {1e-1, 1e-2, 1e-3};
  const QuasioptReport q = quasiopt_ratio(p, FilterSpec::Kind::landweber, 1.0, deltas,
                                          NoiseStrategy::random, 13);
  // delta-independence of the order of magnitude
  CHECK(q.max_ratio / q.min_ratio < 50.0);
  CHECK(q.max_ratio < 10.0);
}
