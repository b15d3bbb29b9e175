#pragma once

#include <span>

#include "arclp/newton.hpp"
#include "arclp/standardize.hpp"

namespace arclp {

/// A primal-dual point (x, lambda, s).
struct Iterate {
  Vec x;
  Vec lambda;
  Vec s;
};

struct Residuals {
  Vec rb;  // A x - b
  Vec rc;  // A^T lambda + s - c
};

Vec primal_residual(const StandardLP& lp, std::span<const double> x);
Vec dual_residual(const StandardLP& lp, std::span<const double> lambda, std::span<const double> s);
Residuals residuals(const StandardLP& lp, const Iterate& it);

/// x^T s / n
double duality_measure(std::span<const double> x, std::span<const double> s);

/// x > 0, s > 0 and ||x o s - mu e||_2 <= theta mu.
bool in_neighborhood(std::span<const double> x, std::span<const double> s, double theta);

/// base - d1 sin(alpha) + d2 (1 - cos(alpha))
Vec arc_point(std::span<const double> base, std::span<const double> d1, std::span<const double> d2, double alpha);

/// Below this value of ||X^-1 delta||_inf the momentum is treated as zero.
inline constexpr double kVacuousMomentum = 1e-14;

struct MomentumWeight {
  double beta_k = 0.0;
  bool vacuous = true;  // caller must use z = x
};

/// min(beta / ||X^-1 delta||_inf, min_j |rb_j / (rb_j - rb_prev_j)|), the inner
/// minimum taken over j with a nonzero denominator (+inf when there is none).
MomentumWeight momentum_weight_full(std::span<const double> x, std::span<const double> x_prev,
                                    std::span<const double> rb, std::span<const double> rb_prev, double beta);

/// beta / ||X^-1 delta||_inf
MomentumWeight momentum_weight_simple(std::span<const double> x, std::span<const double> x_prev, double beta);

enum class RestartMode {
  Guarded,  // keep x + beta_k delta only if it stays in N(theta)
  Always,
};

/// z = x + beta_k delta, subject to `mode`. `s` and `theta` are read only in Guarded mode.
Vec restart_point(std::span<const double> x, double beta_k, std::span<const double> delta, RestartMode mode,
                  std::span<const double> s, double theta);

/// Solves the first-derivative system at (z, lambda, s); `f` must be factored at (p, q) = (z, s).
BlockSolution first_derivatives(const StandardLP& lp, const NewtonFactor& f, std::span<const double> z,
                                std::span<const double> lambda, std::span<const double> s);

/// Second-derivative system with third-block rhs sigma mu_z e - 2 zdot o sdot; sigma = 0
/// gives the unperturbed system.
BlockSolution second_derivatives(const NewtonFactor& f, const BlockSolution& first, double sigma, double mu_z);

}  // namespace arclp
