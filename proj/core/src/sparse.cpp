#include "arclp/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arclp {

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::span<const Triplet> entries) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  std::vector<Triplet> sorted(entries.begin(), entries.end());
  for (const Triplet& t : sorted) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::out_of_range("triplet index out of range");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  SparseMatrix m(rows, cols);
  m.row_idx_.reserve(sorted.size());
  m.values_.reserve(sorted.size());
  std::size_t k = 0;
  for (int j = 0; j < cols; ++j) {
    while (k < sorted.size() && sorted[k].col == j) {
      const int r = sorted[k].row;
      double v = 0.0;
      while (k < sorted.size() && sorted[k].col == j && sorted[k].row == r) v += sorted[k++].value;
      if (v != 0.0) {
        m.row_idx_.push_back(r);
        m.values_.push_back(v);
      }
    }
    m.col_ptr_[j + 1] = static_cast<int>(m.values_.size());
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(int rows, int cols, std::span<const double> row_major) {
  if (row_major.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("dense data size mismatch");
  }
  std::vector<Triplet> t;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double v = row_major[static_cast<std::size_t>(i) * cols + j];
      if (v != 0.0) t.push_back({i, j, v});
    }
  }
  return from_triplets(rows, cols, t);
}

Vec SparseMatrix::multiply(std::span<const double> x) const {
  Vec y(rows_, 0.0);
  multiply_add(x, 1.0, y);
  return y;
}

void SparseMatrix::multiply_add(std::span<const double> x, double alpha, std::span<double> y) const {
  if (x.size() != static_cast<std::size_t>(cols_) || y.size() != static_cast<std::size_t>(rows_)) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  for (int j = 0; j < cols_; ++j) {
    const double xj = alpha * x[j];
    if (xj == 0.0) continue;
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) y[row_idx_[k]] += values_[k] * xj;
  }
}

Vec SparseMatrix::multiply_transpose(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(rows_)) {
    throw std::invalid_argument("multiply_transpose: dimension mismatch");
  }
  Vec y(cols_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    double acc = 0.0;
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) acc += values_[k] * x[row_idx_[k]];
    y[j] = acc;
  }
  return y;
}

double SparseMatrix::at(int i, int j) const {
  const auto rows = col_rows(j);
  const auto it = std::lower_bound(rows.begin(), rows.end(), i);
  if (it == rows.end() || *it != i) return 0.0;
  return values_[col_ptr_[j] + (it - rows.begin())];
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(values_.size());
  for (int j = 0; j < cols_; ++j) {
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) out.push_back({row_idx_[k], j, values_[k]});
  }
  return out;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Triplet> t = triplets();
  for (Triplet& e : t) std::swap(e.row, e.col);
  return from_triplets(cols_, rows_, t);
}

SparseMatrix SparseMatrix::submatrix(std::span<const int> keep_rows, std::span<const int> keep_cols) const {
  std::vector<int> new_row(rows_, -1);
  for (std::size_t i = 0; i < keep_rows.size(); ++i) new_row[keep_rows[i]] = static_cast<int>(i);
  std::vector<Triplet> t;
  for (std::size_t jj = 0; jj < keep_cols.size(); ++jj) {
    const int j = keep_cols[jj];
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      const int r = new_row[row_idx_[k]];
      if (r >= 0) t.push_back({r, static_cast<int>(jj), values_[k]});
    }
  }
  return from_triplets(static_cast<int>(keep_rows.size()), static_cast<int>(keep_cols.size()), t);
}

Vec SparseMatrix::to_dense_row_major() const {
  Vec d(static_cast<std::size_t>(rows_) * cols_, 0.0);
  for (int j = 0; j < cols_; ++j) {
    for (int k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      d[static_cast<std::size_t>(row_idx_[k]) * cols_ + j] = values_[k];
    }
  }
  return d;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) {
  // Scaled accumulation; Netlib data spans many orders of magnitude.
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double v : a) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace arclp
