#include "regrates/filters.hpp"

#include <cmath>
#include <stdexcept>

namespace regrates {

FilterSpec FilterSpec::cutoff(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("cutoff: alpha must be positive");
  FilterSpec f;
  f.kind = Kind::cutoff;
  f.alpha = alpha;
  return f;
}

FilterSpec FilterSpec::tikhonov(double alpha, int k) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tikhonov: alpha must be positive");
  if (k < 1) throw std::invalid_argument("tikhonov: fold count k must be >= 1");
  FilterSpec f;
  f.kind = Kind::tikhonov;
  f.alpha = alpha;
  f.k = k;
  return f;
}

FilterSpec FilterSpec::landweber(double sigma, int k) {
  if (!(sigma > 0.0)) throw std::invalid_argument("landweber: sigma must be positive");
  if (k < 0) throw std::invalid_argument("landweber: iteration index must be >= 0");
  FilterSpec f;
  f.kind = Kind::landweber;
  f.sigma = sigma;
  f.k = k;
  return f;
}

namespace {

void check_landweber_step(double sigma, double lambda) {
  if (sigma * lambda > 1.0) {
    throw std::invalid_argument(
        "landweber: sigma * lambda must not exceed 1, otherwise the "
        "iteration diverges on that mode");
  }
}

}  // namespace

double error_factor(const FilterSpec& f, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("error_factor: lambda must be positive");
  switch (f.kind) {
    case FilterSpec::Kind::cutoff:
      return lambda < f.alpha ? 1.0 : 0.0;
    case FilterSpec::Kind::tikhonov:
      return std::pow(f.alpha / (f.alpha + lambda), f.k);
    case FilterSpec::Kind::landweber:
      check_landweber_step(f.sigma, lambda);
      return std::pow(1.0 - f.sigma * lambda, f.k);
  }
  return 0.0;
}

double regularization_error(const SpectralElement& x, const FilterSpec& f, double r) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double factor = error_factor(f, x.lambda(i));
    const double c = x.coeff(i);
    s += std::pow(x.lambda(i), 2.0 * r) * factor * factor * c * c;
  }
  return std::sqrt(s);
}

SpectralElement tikhonov_solve_noisy(const SpectralProblem& p, const NoisyData& d,
                                     std::span<const double> x0, double alpha, int k) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tikhonov_solve_noisy: alpha > 0 required");
  if (k < 1) throw std::invalid_argument("tikhonov_solve_noisy: k >= 1 required");
  const SpectralElement& x = p.element;
  if (d.clean.size() != x.size() || d.noise.size() != x.size()) {
    throw std::invalid_argument("tikhonov_solve_noisy: data size mismatch");
  }
  if (!x0.empty() && x0.size() != x.size()) {
    throw std::invalid_argument("tikhonov_solve_noisy: prior size mismatch");
  }

  std::vector<double> lambdas(x.lambdas().begin(), x.lambdas().end());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lambda = x.lambda(i);
    const double prior = x0.empty() ? 0.0 : x0[i];
    const double x_data = d.y(i) / std::sqrt(lambda);
    double v = prior;
    for (int j = 0; j < k; ++j) {
      v = (lambda * x_data + alpha * v) / (lambda + alpha);
    }
    out[i] = v - prior;
  }
  return SpectralElement::from_atoms(std::move(lambdas), std::move(out));
}

double tikhonov_noisy_error(const SpectralProblem& p, const NoisyData& d,
                            double alpha, int k) {
  const SpectralElement& x = p.element;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lambda = x.lambda(i);
    const double q = std::pow(alpha / (alpha + lambda), k);
    const double e = q * x.coeff(i) - (1.0 - q) * d.noise[i] / std::sqrt(lambda);
    s += e * e;
  }
  return std::sqrt(s);
}

double tikhonov_noisy_residual(const SpectralProblem& p, const NoisyData& d,
                               double alpha, int k) {
  const SpectralElement& x = p.element;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lambda = x.lambda(i);
    const double q = std::pow(alpha / (alpha + lambda), k);
    const double g = std::sqrt(lambda) * x.coeff(i) + d.noise[i];
    s += q * q * g * g;
  }
  return std::sqrt(s);
}

std::vector<LandweberStep> landweber_run(const SpectralProblem& p, const NoisyData& d,
                                         std::span<const double> x0, double sigma,
                                         int k_max) {
  const SpectralElement& x = p.element;
  if (!x.empty()) check_landweber_step(sigma, x.lambda_max());
  if (d.clean.size() != x.size() || d.noise.size() != x.size()) {
    throw std::invalid_argument("landweber_run: data size mismatch");
  }
  if (!x0.empty() && x0.size() != x.size()) {
    throw std::invalid_argument("landweber_run: prior size mismatch");
  }

  const std::size_t n = x.size();
  std::vector<double> v(n);  // current iterate coefficients
  for (std::size_t i = 0; i < n; ++i) v[i] = x0.empty() ? 0.0 : x0[i];

  std::vector<LandweberStep> steps;
  steps.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    LandweberStep st;
    double err = 0.0, res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sq = std::sqrt(x.lambda(i));
      const double truth = (x0.empty() ? 0.0 : x0[i]) + x.coeff(i);
      const double e = truth - v[i];
      const double rr = d.y(i) - sq * v[i];
      err += e * e;
      res += rr * rr;
    }
    st.error = std::sqrt(err);
    st.residual = std::sqrt(res);
    steps.push_back(st);
    if (k == k_max) break;
    for (std::size_t i = 0; i < n; ++i) {
      const double sq = std::sqrt(x.lambda(i));
      v[i] += sigma * sq * (d.y(i) - sq * v[i]);
    }
  }
  return steps;
}

double landweber_noisy_error(const SpectralProblem& p, const NoisyData& d,
                             double sigma, long k) {
  const SpectralElement& x = p.element;
  if (!x.empty()) check_landweber_step(sigma, x.lambda_max());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lambda = x.lambda(i);
    const double t = std::pow(1.0 - sigma * lambda, static_cast<double>(k));
    const double e = t * x.coeff(i) - (1.0 - t) * d.noise[i] / std::sqrt(lambda);
    s += e * e;
  }
  return std::sqrt(s);
}

double landweber_noisy_residual(const SpectralProblem& p, const NoisyData& d,
                                double sigma, long k) {
  const SpectralElement& x = p.element;
  if (!x.empty()) check_landweber_step(sigma, x.lambda_max());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lambda = x.lambda(i);
    const double t = std::pow(1.0 - sigma * lambda, static_cast<double>(k));
    const double g = std::sqrt(lambda) * x.coeff(i) + d.noise[i];
    s += t * t * g * g;
  }
  return std::sqrt(s);
}

double default_landweber_sigma(const SpectralProblem& p) {
  if (p.element.empty()) {
    throw std::invalid_argument("default_landweber_sigma: empty spectrum");
  }
  return 1.0 / p.element.lambda_max();
}

}  // namespace regrates
