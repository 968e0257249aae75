#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace regrates {

/// An element x (or x - x0) of a Hilbert space expressed in the eigenbasis
/// of a positive self-adjoint operator: a finite list of atoms
/// (eigenvalue lambda_i, coefficient c_i) with lambda_i > 0 and strictly
/// increasing. The empty element is the zero vector.
///
/// Only c_i^2 enters any norm, so the induced spectral measure
/// mu([0,t)) = sum_{lambda_i < t} c_i^2 is the computational substrate.
class SpectralElement {
public:
  SpectralElement() = default;

  /// Builds an element from (eigenvalue, coefficient) pairs. Pairs are
  /// sorted by eigenvalue; eigenvalues closer than kMergeRelTol in
  /// relative distance are merged by root-sum-square of their
  /// coefficients (spectral projections only see lambda-level sets).
  /// Throws std::invalid_argument on a nonpositive or nonfinite
  /// eigenvalue: lambda = 0 would contradict the injectivity of the
  /// operator, which the whole spectral calculus assumes.
  static SpectralElement from_atoms(std::span<const std::pair<double, double>> pairs);
  static SpectralElement from_atoms(std::vector<double> lambdas, std::vector<double> coeffs);

  static constexpr double kMergeRelTol = 1e-12;

  std::size_t size() const { return lambdas_.size(); }
  bool empty() const { return lambdas_.empty(); }

  double lambda(std::size_t i) const { return lambdas_[i]; }
  double coeff(std::size_t i) const { return coeffs_[i]; }
  std::span<const double> lambdas() const { return lambdas_; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Smallest / largest eigenvalue present. Precondition: not empty.
  double lambda_min() const { return lambdas_.front(); }
  double lambda_max() const { return lambdas_.back(); }

  double norm_sq() const;
  double norm() const;

private:
  // Strictly ascending eigenvalues and matching coefficients.
  std::vector<double> lambdas_;
  std::vector<double> coeffs_;
};

/// The measure induced by a SpectralElement: atoms (lambda_i, w_i) with
/// w_i = c_i^2 >= 0, ascending in lambda. Total mass equals ||x||^2.
struct DiscreteSpectralMeasure {
  std::vector<double> lambdas;
  std::vector<double> weights;

  static DiscreteSpectralMeasure from_element(const SpectralElement& x);

  std::size_t size() const { return lambdas.size(); }
  double total_mass() const;
  /// mu([0, t)) for closed = false, mu([0, t]) for closed = true.
  double mass_below(double t, bool closed) const;
};

/// A diagonalized inverse problem: the element is x_dag - x0 in the
/// eigenbasis of T*T, and operator_norm_sq = ||T*T|| is the largest
/// eigenvalue present. Data coefficients live in the same basis as
/// y_i = sqrt(lambda_i) * x_i.
struct SpectralProblem {
  SpectralElement element;
  double operator_norm_sq = 0.0;
  std::string label;

  static SpectralProblem from_element(SpectralElement x, std::string label = {});
};

/// E_{[0,t)} x (closed = false) or E_{[0,t]} x (closed = true):
/// the sub-element with lambda_i < t (resp. <= t). Requires t > 0.
SpectralElement project_below(const SpectralElement& x, double t, bool closed);

/// (T*T)^r x: multiplies each coefficient by lambda_i^r. Any real r is
/// valid since all eigenvalues are positive and the atom list is finite.
SpectralElement apply_power(const SpectralElement& x, double r);

/// Largest eigenvalue of the problem. Throws on an empty element.
double operator_norm(const SpectralProblem& p);

}  // namespace regrates
