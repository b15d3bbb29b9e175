#include "arclp/initial_point.hpp"

#include <algorithm>
#include <cmath>

namespace arclp {

namespace {

constexpr double kStart = 100.0;

bool usable(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double t) { return std::isfinite(t) && t > 1e-10; });
}

}  // namespace

Iterate initial_point_alg1(const StandardLP& lp) {
  return {Vec(lp.cols(), kStart), Vec(lp.rows(), 0.0), Vec(lp.cols(), kStart)};
}

Iterate initial_point_mehrotra(const StandardLP& lp, const NewtonKernel& kernel) {
  const int n = lp.cols();
  const NewtonFactor aat = kernel.factor(Vec(n, 1.0), Vec(n, 1.0));

  Iterate it;
  it.x = lp.A.multiply_transpose(aat.solve_normal(lp.b));
  it.lambda = aat.solve_normal(lp.A.multiply(lp.c));
  it.s = lp.A.multiply_transpose(it.lambda);
  for (int j = 0; j < n; ++j) it.s[j] = lp.c[j] - it.s[j];

  auto shift_positive = [](Vec& v) {
    const double lo = *std::min_element(v.begin(), v.end());
    const double shift = std::max(-1.5 * lo, 0.0);
    for (double& t : v) t += shift;
  };
  shift_positive(it.x);
  shift_positive(it.s);

  const double xs = dot(it.x, it.s);
  double sum_x = 0.0;
  double sum_s = 0.0;
  for (int j = 0; j < n; ++j) {
    sum_x += it.x[j];
    sum_s += it.s[j];
  }
  const double dx = 0.5 * xs / sum_s;
  const double ds = 0.5 * xs / sum_x;
  for (double& t : it.x) t += dx;
  for (double& t : it.s) t += ds;

  if (!usable(it.x)) it.x.assign(n, kStart);
  if (!usable(it.s)) it.s.assign(n, kStart);
  return it;
}

Iterate initial_point_mehrotra(const StandardLP& lp) { return initial_point_mehrotra(lp, NewtonKernel(lp.A)); }

}  // namespace arclp
