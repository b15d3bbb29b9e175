#pragma once

#include <span>
#include <vector>

#include "arclp/mps.hpp"

namespace arclp {

using Vec = std::vector<double>;

/// Compressed sparse column matrix. Row indices are sorted within each column
/// and explicit zeros are dropped at construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_ptr_(cols + 1, 0) {}

  /// Duplicate (row, col) entries are summed; entries that sum to zero are dropped.
  static SparseMatrix from_triplets(int rows, int cols, std::span<const Triplet> entries);
  static SparseMatrix from_dense(int rows, int cols, std::span<const double> row_major);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nonzeros() const { return static_cast<int>(values_.size()); }

  std::span<const int> col_ptr() const { return col_ptr_; }
  std::span<const int> row_idx() const { return row_idx_; }
  std::span<const double> values() const { return values_; }

  std::span<const int> col_rows(int j) const {
    return std::span<const int>(row_idx_).subspan(col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]);
  }
  std::span<const double> col_values(int j) const {
    return std::span<const double>(values_).subspan(col_ptr_[j], col_ptr_[j + 1] - col_ptr_[j]);
  }

  /// y = A x
  Vec multiply(std::span<const double> x) const;
  /// y = A^T x
  Vec multiply_transpose(std::span<const double> x) const;
  /// y += alpha * A x
  void multiply_add(std::span<const double> x, double alpha, std::span<double> y) const;

  double at(int i, int j) const;
  std::vector<Triplet> triplets() const;
  SparseMatrix transpose() const;
  /// Keeps the listed rows and columns (in the given order).
  SparseMatrix submatrix(std::span<const int> keep_rows, std::span<const int> keep_cols) const;
  Vec to_dense_row_major() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> col_ptr_{0};
  std::vector<int> row_idx_;
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);

}  // namespace arclp
