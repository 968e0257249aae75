#include "regrates/supsearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace regrates {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/phi

double golden_max_log_impl(const std::function<double(double)>& f, double ulo, double uhi,
                           double rel_tol, double* value) {
  double a = ulo, b = uhi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(std::exp(c));
  double fd = f(std::exp(d));
  // rel_tol is relative in t, i.e. absolute in u = log t.
  for (int it = 0; it < 200 && (b - a) > rel_tol; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(std::exp(d));
    }
  }
  const double u = 0.5 * (a + b);
  const double t = std::exp(u);
  const double ft = f(t);
  if (value) *value = std::max(ft, std::max(fc, fd));
  if (fc >= fd && fc >= ft) return std::exp(c);
  if (fd >= ft) return std::exp(d);
  return t;
}

}  // namespace

double golden_max_log(const std::function<double(double)>& f, double lo, double hi,
                      double rel_tol, double* value) {
  return golden_max_log_impl(f, std::log(lo), std::log(hi), rel_tol, value);
}

SupResult sup_log_grid(const std::function<double(double)>& f, double lo, double hi,
                       int points_per_decade, double rel_tol) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("sup_log_grid: need 0 < lo < hi");
  }
  const double l10lo = std::log10(lo);
  const double l10hi = std::log10(hi);
  const int n = std::max(3, static_cast<int>(std::ceil((l10hi - l10lo) * points_per_decade)) + 1);

  std::vector<double> us(n), vs(n);
  const double ulo = std::log(lo), uhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    us[i] = ulo + (uhi - ulo) * i / (n - 1);
    vs[i] = f(std::exp(us[i]));
  }

  SupResult res;
  res.grid = GridSpec{l10lo, l10hi, n, points_per_decade};
  res.value = vs[0];
  res.arg_sup = std::exp(us[0]);
  int best_idx = 0;
  for (int i = 1; i < n; ++i) {
    if (vs[i] > res.value) {
      res.value = vs[i];
      res.arg_sup = std::exp(us[i]);
      best_idx = i;
    }
  }

  // Polish every grid-local maximum; the objective need not be unimodal.
  for (int i = 0; i < n; ++i) {
    const bool left_ok = (i == 0) || (vs[i] >= vs[i - 1]);
    const bool right_ok = (i == n - 1) || (vs[i] >= vs[i + 1]);
    if (!(left_ok && right_ok)) continue;
    if (i == 0 || i == n - 1) continue;  // endpoint maxima have no bracket
    double val = 0.0;
    const double arg =
        golden_max_log_impl(f, us[i - 1], us[i + 1], rel_tol, &val);
    ++res.refinements;
    if (val > res.value) {
      res.value = val;
      res.arg_sup = arg;
      best_idx = i;
    }
  }

  res.converged = (best_idx > 0 && best_idx < n - 1);
  return res;
}

SupResult inf_log_grid(const std::function<double(double)>& f, double lo, double hi,
                       int points_per_decade, double rel_tol) {
  SupResult res = sup_log_grid([&f](double t) { return -f(t); }, lo, hi,
                               points_per_decade, rel_tol);
  res.value = -res.value;
  return res;
}

}  // namespace regrates
