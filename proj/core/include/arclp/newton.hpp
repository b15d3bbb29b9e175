#pragma once

#include <memory>
#include <span>

#include "arclp/sparse.hpp"

namespace arclp {

enum class KernelMode { Auto, Dense, Sparse };

/// Problems with at most this many rows use the dense factorization in Auto mode.
inline constexpr int kDenseRowLimit = 200;

struct BlockSolution {
  Vec dx;
  Vec dlambda;
  Vec ds;
};

namespace detail {
struct KernelData;
struct FactorData;
}  // namespace detail

/// Cholesky factor of M = A diag(p/q) A^T. Immutable; copies share the factor.
class NewtonFactor {
 public:
  const SparseMatrix& matrix() const;
  int rows() const;
  int cols() const;
  bool is_dense() const;
  /// Diagonal shift that was needed to factor M (0 when the first attempt succeeded).
  double regularization() const;
  std::span<const double> p() const;
  std::span<const double> q() const;

  /// Solves M y = rhs.
  Vec solve_normal(std::span<const double> rhs) const;

 private:
  friend class NewtonKernel;
  explicit NewtonFactor(std::shared_ptr<const detail::FactorData> f) : f_(std::move(f)) {}
  std::shared_ptr<const detail::FactorData> f_;
};

/// Owns A and the fill-reducing ordering of A A^T, computed once on
/// construction and reused by every factorization.
class NewtonKernel {
 public:
  explicit NewtonKernel(const SparseMatrix& A, KernelMode mode = KernelMode::Auto);

  const SparseMatrix& matrix() const;
  bool dense() const;

  /// Throws std::invalid_argument unless p and q are finite and strictly positive.
  /// A failed factorization is retried once with a diagonal shift of
  /// 1e-12 * max diag(M); a second failure throws NumericalError.
  NewtonFactor factor(std::span<const double> p, std::span<const double> q) const;

 private:
  std::shared_ptr<const detail::KernelData> k_;
};

/// One-off factorization without a reusable kernel.
NewtonFactor factor(const SparseMatrix& A, std::span<const double> p, std::span<const double> q,
                    KernelMode mode = KernelMode::Auto);

/// Solves
///   A dx = r1,  A^T dl + ds = r2,  diag(q) dx + diag(p) ds = r3
/// through the normal equations of `f`. Throws NumericalError when any block
/// residual exceeds 1e-8 * (1 + ||(r1, r2, r3)||).
BlockSolution solve_block(const NewtonFactor& f, std::span<const double> r1, std::span<const double> r2,
                          std::span<const double> r3);

/// Dense row-major M = A diag(p/q) A^T, for tests and diagnostics.
Vec normal_matrix(const SparseMatrix& A, std::span<const double> p, std::span<const double> q);

}  // namespace arclp
