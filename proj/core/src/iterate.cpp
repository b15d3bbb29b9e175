#include "arclp/iterate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arclp {

Vec primal_residual(const StandardLP& lp, std::span<const double> x) {
  Vec rb = lp.A.multiply(x);
  for (int i = 0; i < lp.rows(); ++i) rb[i] -= lp.b[i];
  return rb;
}

Vec dual_residual(const StandardLP& lp, std::span<const double> lambda, std::span<const double> s) {
  if (s.size() != static_cast<std::size_t>(lp.cols())) throw std::invalid_argument("dual_residual: length mismatch");
  Vec rc = lp.A.multiply_transpose(lambda);
  for (int j = 0; j < lp.cols(); ++j) rc[j] += s[j] - lp.c[j];
  return rc;
}

Residuals residuals(const StandardLP& lp, const Iterate& it) {
  return {primal_residual(lp, it.x), dual_residual(lp, it.lambda, it.s)};
}

double duality_measure(std::span<const double> x, std::span<const double> s) {
  if (x.empty()) throw std::invalid_argument("duality_measure: empty vectors");
  return dot(x, s) / static_cast<double>(x.size());
}

bool in_neighborhood(std::span<const double> x, std::span<const double> s, double theta) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(s[i] > 0.0)) return false;
  }
  const double mu = duality_measure(x, s);
  Vec dev(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) dev[i] = x[i] * s[i] - mu;
  return norm2(dev) <= theta * mu;
}

Vec arc_point(std::span<const double> base, std::span<const double> d1, std::span<const double> d2, double alpha) {
  if (d1.size() != base.size() || d2.size() != base.size()) throw std::invalid_argument("arc_point: length mismatch");
  const double sa = std::sin(alpha);
  const double ca = 1.0 - std::cos(alpha);
  Vec out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] - d1[i] * sa + d2[i] * ca;
  return out;
}

namespace {

// ||X^-1 (x - x_prev)||_inf
double relative_momentum(std::span<const double> x, std::span<const double> x_prev) {
  if (x.size() != x_prev.size()) throw std::invalid_argument("momentum: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs((x[i] - x_prev[i]) / x[i]));
  return m;
}

}  // namespace

MomentumWeight momentum_weight_simple(std::span<const double> x, std::span<const double> x_prev, double beta) {
  const double m = relative_momentum(x, x_prev);
  if (m < kVacuousMomentum) return {};
  return {beta / m, false};
}

MomentumWeight momentum_weight_full(std::span<const double> x, std::span<const double> x_prev,
                                    std::span<const double> rb, std::span<const double> rb_prev, double beta) {
  MomentumWeight w = momentum_weight_simple(x, x_prev, beta);
  if (w.vacuous) return w;
  if (rb.size() != rb_prev.size()) throw std::invalid_argument("momentum: residual length mismatch");
  double ratio = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < rb.size(); ++j) {
    const double d = rb[j] - rb_prev[j];
    if (d != 0.0) ratio = std::min(ratio, std::abs(rb[j] / d));
  }
  w.beta_k = std::min(w.beta_k, ratio);
  return w;
}

Vec restart_point(std::span<const double> x, double beta_k, std::span<const double> delta, RestartMode mode,
                  std::span<const double> s, double theta) {
  if (delta.size() != x.size()) throw std::invalid_argument("restart_point: length mismatch");
  Vec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + beta_k * delta[i];
  if (mode == RestartMode::Guarded && !in_neighborhood(z, s, theta)) return Vec(x.begin(), x.end());
  return z;
}

BlockSolution first_derivatives(const StandardLP& lp, const NewtonFactor& f, std::span<const double> z,
                                std::span<const double> lambda, std::span<const double> s) {
  const Vec rb = primal_residual(lp, z);
  const Vec rc = dual_residual(lp, lambda, s);
  Vec zs(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) zs[i] = z[i] * s[i];
  return solve_block(f, rb, rc, zs);
}

BlockSolution second_derivatives(const NewtonFactor& f, const BlockSolution& first, double sigma, double mu_z) {
  const std::size_t n = first.dx.size();
  const Vec r1(f.rows(), 0.0);
  const Vec r2(n, 0.0);
  Vec r3(n);
  for (std::size_t i = 0; i < n; ++i) r3[i] = sigma * mu_z - 2.0 * first.dx[i] * first.ds[i];
  return solve_block(f, r1, r2, r3);
}

}  // namespace arclp
