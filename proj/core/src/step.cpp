#include "arclp/step.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arclp {

namespace {

constexpr int kGridPoints = 64;
constexpr int kBisections = 60;

double phi(double b, double d1, double d2, double a) { return b - d1 * std::sin(a) + d2 * (1.0 - std::cos(a)); }

bool all_nonnegative(std::span<const double> base, std::span<const double> d1, std::span<const double> d2,
                     double a) {
  const double sa = std::sin(a);
  const double ca = 1.0 - std::cos(a);
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i] - d1[i] * sa + d2[i] * ca < 0.0) return false;
  }
  return true;
}

}  // namespace

double max_alpha_positivity(std::span<const double> base, std::span<const double> d1, std::span<const double> d2) {
  if (d1.size() != base.size() || d2.size() != base.size()) {
    throw std::invalid_argument("max_alpha_positivity: length mismatch");
  }
  const double h = kHalfPi / (kGridPoints - 1);
  double alpha = kHalfPi;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (d1[i] <= 0.0 && d2[i] >= 0.0) continue;  // nondecreasing on the whole interval
    double lo = 0.0;
    double hi = -1.0;
    for (int k = 1; k < kGridPoints; ++k) {
      // Points past the running minimum cannot lower it.
      const double a = std::min(k == kGridPoints - 1 ? kHalfPi : k * h, alpha);
      if (phi(base[i], d1[i], d2[i], a) < 0.0) {
        hi = a;
        break;
      }
      lo = a;
      if (a == alpha) break;
    }
    if (hi < 0.0) continue;
    for (int it = 0; it < kBisections; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (phi(base[i], d1[i], d2[i], mid) < 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    alpha = std::min(alpha, lo);
  }
  if (all_nonnegative(base, d1, d2, alpha)) return alpha;
  if (all_nonnegative(base, d1, d2, alpha * (1.0 - 1e-12))) return alpha * (1.0 - 1e-12);
  while (alpha > 0.0 && !all_nonnegative(base, d1, d2, alpha)) alpha *= 0.5;
  return alpha;
}

double max_linear_step(std::span<const double> v, std::span<const double> dv, double cap) {
  if (v.size() != dv.size()) throw std::invalid_argument("max_linear_step: length mismatch");
  double alpha = cap;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (dv[i] > 0.0) alpha = std::min(alpha, v[i] / dv[i]);
  }
  return std::max(alpha, 0.0);
}

}  // namespace arclp
