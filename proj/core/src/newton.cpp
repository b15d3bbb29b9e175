#include "arclp/newton.hpp"

#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "arclp/error.hpp"

namespace arclp {

namespace detail {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using SparseLLT = Eigen::SimplicialLLT<SpMat, Eigen::Lower, Eigen::NaturalOrdering<int>>;

struct KernelData {
  SparseMatrix A;
  bool dense = false;
  Eigen::MatrixXd A_dense;                             // dense path
  SpMat A_perm;                                        // sparse path: rows permuted by AMD
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
};

struct FactorData {
  std::shared_ptr<const KernelData> k;
  Vec p;
  Vec q;
  double shift = 0.0;
  Eigen::LLT<Eigen::MatrixXd> dense;
  std::unique_ptr<SparseLLT> sparse;
};

}  // namespace detail

namespace {

using detail::SpMat;

SpMat to_eigen(const SparseMatrix& A) {
  SpMat out(A.rows(), A.cols());
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(A.nonzeros());
  for (const Triplet& e : A.triplets()) t.emplace_back(e.row, e.col, e.value);
  out.setFromTriplets(t.begin(), t.end());
  out.makeCompressed();
  return out;
}

void check_scaling(const SparseMatrix& A, std::span<const double> p, std::span<const double> q) {
  const auto n = static_cast<std::size_t>(A.cols());
  if (p.size() != n || q.size() != n) throw std::invalid_argument("factor: p and q must have one entry per column");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(p[j] > 0.0) || !(q[j] > 0.0) || !std::isfinite(p[j]) || !std::isfinite(q[j])) {
      throw std::invalid_argument("factor: p and q must be strictly positive (index " + std::to_string(j) + ")");
    }
  }
}

}  // namespace

const SparseMatrix& NewtonFactor::matrix() const { return f_->k->A; }
int NewtonFactor::rows() const { return f_->k->A.rows(); }
int NewtonFactor::cols() const { return f_->k->A.cols(); }
bool NewtonFactor::is_dense() const { return f_->k->dense; }
double NewtonFactor::regularization() const { return f_->shift; }
std::span<const double> NewtonFactor::p() const { return f_->p; }
std::span<const double> NewtonFactor::q() const { return f_->q; }

Vec NewtonFactor::solve_normal(std::span<const double> rhs) const {
  const int m = rows();
  if (rhs.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("solve_normal: length mismatch");
  Eigen::Map<const Eigen::VectorXd> r(rhs.data(), m);
  Eigen::VectorXd y;
  if (f_->k->dense) {
    y = f_->dense.solve(r);
  } else {
    const auto& P = f_->k->perm;
    Eigen::VectorXd rp = P * r;
    Eigen::VectorXd yp = f_->sparse->solve(rp);
    y = P.transpose() * yp;
  }
  return Vec(y.data(), y.data() + m);
}

NewtonKernel::NewtonKernel(const SparseMatrix& A, KernelMode mode) {
  auto k = std::make_shared<detail::KernelData>();
  k->A = A;
  k->dense = mode == KernelMode::Dense || (mode == KernelMode::Auto && A.rows() <= kDenseRowLimit);
  if (k->dense) {
    k->A_dense = Eigen::MatrixXd::Zero(A.rows(), A.cols());
    for (const Triplet& e : A.triplets()) k->A_dense(e.row, e.col) = e.value;
  } else {
    SpMat Ae = to_eigen(A);
    SpMat pattern = Ae * Ae.transpose();
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> pinv;
    Eigen::AMDOrdering<int> amd;
    amd(pattern, pinv);
    k->perm = pinv.inverse();
    k->A_perm = k->perm * Ae;
    k->A_perm.makeCompressed();
  }
  k_ = std::move(k);
}

const SparseMatrix& NewtonKernel::matrix() const { return k_->A; }
bool NewtonKernel::dense() const { return k_->dense; }

NewtonFactor NewtonKernel::factor(std::span<const double> p, std::span<const double> q) const {
  check_scaling(k_->A, p, q);
  auto f = std::make_shared<detail::FactorData>();
  f->k = k_;
  f->p.assign(p.begin(), p.end());
  f->q.assign(q.begin(), q.end());
  const int n = k_->A.cols();
  Eigen::VectorXd d(n);
  for (int j = 0; j < n; ++j) d[j] = p[j] / q[j];

  if (k_->dense) {
    Eigen::MatrixXd M = (k_->A_dense * d.asDiagonal()) * k_->A_dense.transpose();
    f->dense.compute(M);
    if (f->dense.info() != Eigen::Success) {
      f->shift = 1e-12 * M.diagonal().maxCoeff();
      M.diagonal().array() += f->shift;
      f->dense.compute(M);
      if (f->dense.info() != Eigen::Success) throw NumericalError("normal matrix is not positive definite");
    }
  } else {
    SpMat M = k_->A_perm * d.asDiagonal() * k_->A_perm.transpose();
    f->sparse = std::make_unique<detail::SparseLLT>();
    f->sparse->compute(M);
    if (f->sparse->info() != Eigen::Success) {
      double maxdiag = 0.0;
      for (int i = 0; i < M.rows(); ++i) maxdiag = std::max(maxdiag, M.coeff(i, i));
      f->shift = 1e-12 * maxdiag;
      SpMat I(M.rows(), M.cols());
      I.setIdentity();
      M += f->shift * I;
      f->sparse->compute(M);
      if (f->sparse->info() != Eigen::Success) throw NumericalError("normal matrix is not positive definite");
    }
  }
  return NewtonFactor(std::move(f));
}

NewtonFactor factor(const SparseMatrix& A, std::span<const double> p, std::span<const double> q, KernelMode mode) {
  return NewtonKernel(A, mode).factor(p, q);
}

namespace {

BlockSolution eliminate(const NewtonFactor& f, std::span<const double> r1, std::span<const double> r2,
                        std::span<const double> r3) {
  const SparseMatrix& A = f.matrix();
  const auto n = static_cast<std::size_t>(A.cols());
  const auto p = f.p();
  const auto q = f.q();
  Vec t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = (p[j] * r2[j] - r3[j]) / q[j];
  Vec rhs(r1.begin(), r1.end());
  A.multiply_add(t, 1.0, rhs);

  BlockSolution out;
  out.dlambda = f.solve_normal(rhs);
  out.ds = A.multiply_transpose(out.dlambda);
  for (std::size_t j = 0; j < n; ++j) out.ds[j] = r2[j] - out.ds[j];
  out.dx.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.dx[j] = (r3[j] - p[j] * out.ds[j]) / q[j];
  return out;
}

// Block residuals (e1, e2, e3) of a candidate solution.
std::array<Vec, 3> block_residuals(const NewtonFactor& f, const BlockSolution& x, std::span<const double> r1,
                                   std::span<const double> r2, std::span<const double> r3) {
  const SparseMatrix& A = f.matrix();
  const auto p = f.p();
  const auto q = f.q();
  Vec e1 = A.multiply(x.dx);
  for (std::size_t i = 0; i < e1.size(); ++i) e1[i] -= r1[i];
  Vec e2 = A.multiply_transpose(x.dlambda);
  for (std::size_t j = 0; j < e2.size(); ++j) e2[j] += x.ds[j] - r2[j];
  Vec e3(e2.size());
  for (std::size_t j = 0; j < e3.size(); ++j) e3[j] = q[j] * x.dx[j] + p[j] * x.ds[j] - r3[j];
  return {std::move(e1), std::move(e2), std::move(e3)};
}

double worst_norm(const std::array<Vec, 3>& e) { return std::max({norm2(e[0]), norm2(e[1]), norm2(e[2])}); }

}  // namespace

BlockSolution solve_block(const NewtonFactor& f, std::span<const double> r1, std::span<const double> r2,
                          std::span<const double> r3) {
  const auto m = static_cast<std::size_t>(f.rows());
  const auto n = static_cast<std::size_t>(f.cols());
  if (r1.size() != m || r2.size() != n || r3.size() != n) throw std::invalid_argument("solve_block: rhs size mismatch");

  double rhs_sq = 0.0;
  for (auto r : {r1, r2, r3}) {
    const double v = norm2(r);
    rhs_sq += v * v;
  }
  const double tol = 1e-8 * (1.0 + std::sqrt(rhs_sq));

  BlockSolution out = eliminate(f, r1, r2, r3);
  auto e = block_residuals(f, out, r1, r2, r3);
  double worst = worst_norm(e);
  if (!(worst <= tol) && std::isfinite(worst)) {
    // One refinement pass: solve for the correction against the same factor.
    for (auto& v : e) {
      for (double& t : v) t = -t;
    }
    const BlockSolution c = eliminate(f, e[0], e[1], e[2]);
    for (std::size_t j = 0; j < n; ++j) {
      out.dx[j] += c.dx[j];
      out.ds[j] += c.ds[j];
    }
    for (std::size_t i = 0; i < m; ++i) out.dlambda[i] += c.dlambda[i];
    worst = worst_norm(block_residuals(f, out, r1, r2, r3));
  }
  if (!(worst <= tol)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "Newton system solved inaccurately (residual %.3g, tolerance %.3g)", worst, tol);
    throw NumericalError(buf);
  }
  return out;
}

Vec normal_matrix(const SparseMatrix& A, std::span<const double> p, std::span<const double> q) {
  check_scaling(A, p, q);
  const int m = A.rows();
  Vec M(static_cast<std::size_t>(m) * m, 0.0);
  for (int j = 0; j < A.cols(); ++j) {
    const double d = p[j] / q[j];
    const auto rows = A.col_rows(j);
    const auto vals = A.col_values(j);
    for (std::size_t a = 0; a < rows.size(); ++a) {
      for (std::size_t b = 0; b < rows.size(); ++b) {
        M[static_cast<std::size_t>(rows[a]) * m + rows[b]] += vals[a] * d * vals[b];
      }
    }
  }
  return M;
}

}  // namespace arclp
