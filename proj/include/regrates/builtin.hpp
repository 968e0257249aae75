#pragma once

#include <cstdint>

#include "regrates/spectral.hpp"

namespace regrates {

/// The built-in problem instances used by the golden tests and CLI demos.
struct ExampleId {
  enum class Kind { diag, dirac, powerlaw, bvp_sign };

  Kind kind = Kind::dirac;
  long n = 1;           // truncation index (diag, bvp_sign)
  double lambda0 = 1.0; // dirac eigenvalue
  double nu = 0.5;      // powerlaw exponent
  long atoms = 2;       // powerlaw atom count

  /// Diagonal operator with eigenvalues 1/n and coefficients n^{-3/2},
  /// n = 1..N; the classic instance whose tail norm is finite while the
  /// scale norm ||.||_1 diverges.
  static ExampleId diag(long n);
  /// A single atom (lambda0, 1).
  static ExampleId dirac(double lambda0);
  /// Equal-mass discretization of d mu = 2 nu lambda^{2 nu - 1} d lambda
  /// on (0, 1] into M atoms placed at interval mass centroids; total mass
  /// is exactly 1 and |||x|||_nu = 1 in the continuum limit.
  static ExampleId powerlaw(double nu, long atoms);
  /// Differentiating the triangle wave: the operator whose normal equations
  /// solve -u'' = x with Dirichlet conditions on (-1,1), eigenvalues
  /// (2/(n pi))^2, and the expansion coefficients of sign(s) in the
  /// normalized eigenfunctions sin(n pi (s+1)/2). The coefficients come
  /// from the closed-form antiderivative, so only n = 2 (mod 4) survive.
  static ExampleId bvp_sign(long n);
};

SpectralProblem build(const ExampleId& id);

}  // namespace regrates
