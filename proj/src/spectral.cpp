#include "regrates/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace regrates {

namespace {

void check_eigenvalue(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(
        "SpectralElement: eigenvalue must be positive and finite; "
        "lambda = 0 is excluded because the operator is assumed injective "
        "(no spectral mass at the origin)");
  }
}

}  // namespace

SpectralElement SpectralElement::from_atoms(std::span<const std::pair<double, double>> pairs) {
  std::vector<double> lambdas, coeffs;
  lambdas.reserve(pairs.size());
  coeffs.reserve(pairs.size());
  for (const auto& [lambda, coeff] : pairs) {
    lambdas.push_back(lambda);
    coeffs.push_back(coeff);
  }
  return from_atoms(std::move(lambdas), std::move(coeffs));
}

SpectralElement SpectralElement::from_atoms(std::vector<double> lambdas,
                                            std::vector<double> coeffs) {
  if (lambdas.size() != coeffs.size()) {
    throw std::invalid_argument("SpectralElement: eigenvalue/coefficient size mismatch");
  }
  for (double lambda : lambdas) check_eigenvalue(lambda);

  std::vector<std::size_t> order(lambdas.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lambdas[a] < lambdas[b]; });

  SpectralElement out;
  out.lambdas_.reserve(lambdas.size());
  out.coeffs_.reserve(lambdas.size());
  for (std::size_t idx : order) {
    const double lambda = lambdas[idx];
    const double coeff = coeffs[idx];
    if (!out.lambdas_.empty() &&
        lambda - out.lambdas_.back() <= kMergeRelTol * out.lambdas_.back()) {
      // Euclidean merge: signs cannot matter because only c^2 enters norms.
      double& c = out.coeffs_.back();
      c = std::hypot(c, coeff);
    } else {
      out.lambdas_.push_back(lambda);
      out.coeffs_.push_back(coeff);
    }
  }
  return out;
}

double SpectralElement::norm_sq() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double SpectralElement::norm() const { return std::sqrt(norm_sq()); }

DiscreteSpectralMeasure DiscreteSpectralMeasure::from_element(const SpectralElement& x) {
  DiscreteSpectralMeasure mu;
  mu.lambdas.assign(x.lambdas().begin(), x.lambdas().end());
  mu.weights.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mu.weights[i] = x.coeff(i) * x.coeff(i);
  return mu;
}

double DiscreteSpectralMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double DiscreteSpectralMeasure::mass_below(double t, bool closed) const {
  double s = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (lambdas[i] < t || (closed && lambdas[i] == t)) s += weights[i];
  }
  return s;
}

SpectralProblem SpectralProblem::from_element(SpectralElement x, std::string label) {
  SpectralProblem p;
  p.operator_norm_sq = x.empty() ? 0.0 : x.lambda_max();
  p.element = std::move(x);
  p.label = std::move(label);
  return p;
}

SpectralElement project_below(const SpectralElement& x, double t, bool closed) {
  if (!(t > 0.0)) throw std::invalid_argument("project_below: threshold must be positive");
  std::vector<double> lambdas, coeffs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lambda = x.lambda(i);
    if (lambda < t || (closed && lambda == t)) {
      lambdas.push_back(lambda);
      coeffs.push_back(x.coeff(i));
    } else {
      break;  // atoms are ascending
    }
  }
  return SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs));
}

SpectralElement apply_power(const SpectralElement& x, double r) {
  std::vector<double> lambdas(x.lambdas().begin(), x.lambdas().end());
  std::vector<double> coeffs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    coeffs[i] = x.coeff(i) * std::pow(x.lambda(i), r);
  }
  return SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs));
}

double operator_norm(const SpectralProblem& p) {
  if (p.element.empty()) {
    throw std::invalid_argument("operator_norm: element has no atoms");
  }
  return p.element.lambda_max();
}

}  // namespace regrates
