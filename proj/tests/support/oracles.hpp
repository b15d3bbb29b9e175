#pragma once

// Independent reference computations for the tests: random LP instances built
// around a known interior point, dense Gaussian elimination, and a brute-force
// vertex enumeration for tiny LPs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "arclp/standardize.hpp"

namespace oracle {

using arclp::Vec;

/// Row-major dense matrix.
struct Dense {
  int rows = 0;
  int cols = 0;
  Vec a;

  Dense(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// Gaussian elimination with partial pivoting; nullopt when a pivot is below `tiny`.
inline std::optional<Vec> gauss_solve(Dense M, Vec rhs, double tiny = 1e-13) {
  const int n = M.rows;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(M(i, k)) > std::abs(M(piv, k))) piv = i;
    }
    if (std::abs(M(piv, k)) <= tiny) return std::nullopt;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(M(k, j), M(piv, j));
      std::swap(rhs[k], rhs[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = M(i, k) / M(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) M(i, j) -= f * M(k, j);
      rhs[i] -= f * rhs[k];
    }
  }
  Vec x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int j = i + 1; j < n; ++j) s -= M(i, j) * x[j];
    x[i] = s / M(i, i);
  }
  return x;
}

struct BlockAnswer {
  Vec dx;
  Vec dlambda;
  Vec ds;
};

/// Assembles the full (2n+m) system [A 0 0; 0 A^T I; diag(q) 0 diag(p)] and
/// solves it directly.
inline std::optional<BlockAnswer> brute_force_block(const arclp::SparseMatrix& A, const Vec& p, const Vec& q,
                                                     const Vec& r1, const Vec& r2, const Vec& r3) {
  const int m = A.rows();
  const int n = A.cols();
  const int N = 2 * n + m;
  Dense K(N, N);
  for (const auto& t : A.triplets()) {
    K(t.row, t.col) = t.value;              // A dx
    K(m + t.col, n + t.row) = t.value;      // A^T dl
  }
  for (int j = 0; j < n; ++j) {
    K(m + j, n + m + j) = 1.0;              // + ds
    K(m + n + j, j) = q[j];                 // diag(q) dx
    K(m + n + j, n + m + j) = p[j];         // diag(p) ds
  }
  Vec rhs;
  rhs.insert(rhs.end(), r1.begin(), r1.end());
  rhs.insert(rhs.end(), r2.begin(), r2.end());
  rhs.insert(rhs.end(), r3.begin(), r3.end());
  auto sol = gauss_solve(std::move(K), std::move(rhs));
  if (!sol) return std::nullopt;
  BlockAnswer out;
  out.dx.assign(sol->begin(), sol->begin() + n);
  out.dlambda.assign(sol->begin() + n, sol->begin() + n + m);
  out.ds.assign(sol->begin() + n + m, sol->end());
  return out;
}

/// Optimal objective of min c^T x, Ax = b, x >= 0 by enumerating every basis.
/// Only for tiny problems; nullopt when no basis is primal feasible.
inline std::optional<double> vertex_enumeration(const arclp::StandardLP& lp) {
  const int m = lp.rows();
  const int n = lp.cols();
  std::vector<int> pick(m);
  for (int i = 0; i < m; ++i) pick[i] = i;
  std::optional<double> best;
  while (true) {
    Dense B(m, m);
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i < m; ++i) B(i, k) = lp.A.at(i, pick[k]);
    }
    if (auto xb = gauss_solve(B, lp.b, 1e-10)) {
      if (std::all_of(xb->begin(), xb->end(), [](double v) { return v >= -1e-9; })) {
        double obj = 0.0;
        for (int k = 0; k < m; ++k) obj += lp.c[pick[k]] * (*xb)[k];
        if (!best || obj < *best) best = obj;
      }
    }
    int i = m - 1;
    while (i >= 0 && pick[i] == n - m + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (best) return *best;
  return std::nullopt;
}

struct RandomLP {
  arclp::StandardLP lp;
  Vec x;       // strictly feasible primal point
  Vec lambda;  // together with s, strictly feasible dual point
  Vec s;
};

/// Dense Gaussian A (full row rank with probability one), b = A x, c = A^T lambda + s
/// for random x, s in [0.5, 2] and lambda ~ N(0, 1). Primal and dual are strictly
/// feasible, so the LP has a finite optimum.
inline RandomLP random_lp(std::mt19937_64& rng, int m, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  RandomLP r;
  std::vector<arclp::Triplet> t;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t.push_back({i, j, normal(rng)});
  }
  r.lp.name = "random";
  r.lp.A = arclp::SparseMatrix::from_triplets(m, n, t);
  r.x.resize(n);
  r.s.resize(n);
  r.lambda.resize(m);
  for (auto& v : r.x) v = pos(rng);
  for (auto& v : r.s) v = pos(rng);
  for (auto& v : r.lambda) v = normal(rng);
  r.lp.b = r.lp.A.multiply(r.x);
  r.lp.c = r.lp.A.multiply_transpose(r.lambda);
  for (int j = 0; j < n; ++j) r.lp.c[j] += r.s[j];
  r.lp.var_map.roles.assign(n, arclp::ColumnRole::Shifted);
  r.lp.var_map.rules.resize(n);
  for (int j = 0; j < n; ++j) r.lp.var_map.rules[j].terms.push_back({j, 1.0});
  return r;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace oracle
