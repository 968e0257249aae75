#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace regrates {

/// Deterministic random source. std::mt19937_64's raw output is pinned by
/// the standard, but the <random> distributions are not, so the uniform
/// and normal transforms are spelled out here to keep seeded runs
/// byte-identical across toolchains.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// log-uniform in [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Standard normal via Box-Muller (uses two uniforms per pair).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform direction on the unit sphere of R^n, scaled to given norm.
  std::vector<double> sphere(std::size_t n, double norm) {
    std::vector<double> v(n);
    double s = 0.0;
    do {
      s = 0.0;
      for (auto& vi : v) {
        vi = normal();
        s += vi * vi;
      }
    } while (s == 0.0);
    const double scale = norm / std::sqrt(s);
    for (auto& vi : v) vi *= scale;
    return v;
  }

  std::uint64_t raw() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace regrates
