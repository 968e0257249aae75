#include "regrates/builtin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace regrates {

ExampleId ExampleId::diag(long n) {
  if (n < 1) throw std::invalid_argument("diag: n >= 1 required");
  ExampleId id;
  id.kind = Kind::diag;
  id.n = n;
  return id;
}

ExampleId ExampleId::dirac(double lambda0) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("dirac: lambda0 > 0 required");
  ExampleId id;
  id.kind = Kind::dirac;
  id.lambda0 = lambda0;
  return id;
}

ExampleId ExampleId::powerlaw(double nu, long atoms) {
  if (!(nu > 0.0)) throw std::invalid_argument("powerlaw: nu > 0 required");
  if (atoms < 2) throw std::invalid_argument("powerlaw: at least two atoms required");
  ExampleId id;
  id.kind = Kind::powerlaw;
  id.nu = nu;
  id.atoms = atoms;
  return id;
}

ExampleId ExampleId::bvp_sign(long n) {
  if (n < 1) throw std::invalid_argument("bvp_sign: n >= 1 required");
  ExampleId id;
  id.kind = Kind::bvp_sign;
  id.n = n;
  return id;
}

namespace {

SpectralProblem build_diag(long n) {
  std::vector<double> lambdas(n), coeffs(n);
  for (long i = 0; i < n; ++i) {
    const long idx = n - i;  // ascending eigenvalues
    lambdas[i] = 1.0 / static_cast<double>(idx);
    coeffs[i] = std::pow(static_cast<double>(idx), -1.5);
  }
  return SpectralProblem::from_element(
      SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs)),
      "diag(" + std::to_string(n) + ")");
}

SpectralProblem build_powerlaw(double nu, long m) {
  std::vector<double> lambdas(m), coeffs(m);
  const double p = 2.0 * nu;
  const double md = static_cast<double>(m);
  for (long j = 1; j <= m; ++j) {
    const double a = std::pow((j - 1) / md, 1.0 / p);
    const double b = std::pow(j / md, 1.0 / p);
    // centroid of the j-th equal-mass cell under d mu = p l^{p-1} dl
    lambdas[j - 1] = md * p / (p + 1.0) * (std::pow(b, p + 1.0) - std::pow(a, p + 1.0));
    coeffs[j - 1] = std::sqrt(1.0 / md);
  }
  return SpectralProblem::from_element(
      SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs)),
      "powerlaw(" + std::to_string(nu) + "," + std::to_string(m) + ")");
}

SpectralProblem build_bvp_sign(long n) {
  // <sign, sin(n pi (s+1)/2)> on (-1, 1) from the antiderivative:
  //   (2/(n pi)) (2 cos(n pi / 2) - cos(n pi) - 1),
  // evaluated with the cosines resolved exactly at integer multiples of
  // pi/2 and the prefactor in extended precision.
  std::vector<double> lambdas(n), coeffs(n);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (long i = 0; i < n; ++i) {
    const long idx = n - i;  // ascending eigenvalues
    const long double f = 2.0L / (static_cast<long double>(idx) * pi);
    lambdas[i] = static_cast<double>(f * f);
    static constexpr int kCosHalf[4] = {1, 0, -1, 0};  // cos(n pi / 2)
    const int cos_half = kCosHalf[idx % 4];
    const int cos_pi = (idx % 2 == 0) ? 1 : -1;
    coeffs[i] = static_cast<double>(f * (2 * cos_half - cos_pi - 1));
  }
  return SpectralProblem::from_element(
      SpectralElement::from_atoms(std::move(lambdas), std::move(coeffs)),
      "bvp_sign(" + std::to_string(n) + ")");
}

}  // namespace

SpectralProblem build(const ExampleId& id) {
  switch (id.kind) {
    case ExampleId::Kind::diag:
      return build_diag(id.n);
    case ExampleId::Kind::dirac:
      return SpectralProblem::from_element(
          SpectralElement::from_atoms(std::vector<double>{id.lambda0},
                                      std::vector<double>{1.0}),
          "dirac(" + std::to_string(id.lambda0) + ")");
    case ExampleId::Kind::powerlaw:
      return build_powerlaw(id.nu, id.atoms);
    case ExampleId::Kind::bvp_sign:
      return build_bvp_sign(id.n);
  }
  throw std::invalid_argument("build: unknown example kind");
}

}  // namespace regrates
