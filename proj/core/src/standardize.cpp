#include "arclp/standardize.hpp"

#include <cmath>
#include <stdexcept>

#include "arclp/error.hpp"

namespace arclp {

Vec VarMap::recover(std::span<const double> x_std) const {
  if (x_std.size() != roles.size()) throw std::invalid_argument("recover: length mismatch");
  Vec x(rules.size(), 0.0);
  for (std::size_t i = 0; i < rules.size(); ++i) {
    double v = rules[i].constant;
    for (const Term& t : rules[i].terms) v += t.coef * x_std[t.col];
    x[i] = v;
  }
  return x;
}

StandardLP to_standard_form(const RawLP& raw) {
  raw.validate();
  const int n0 = raw.cols();
  const int n_eq = raw.eq.rows();
  const int n_ge = raw.ge.rows();
  const int n_le = raw.le.rows();
  if (n0 == 0 || n_eq + n_ge + n_le == 0) throw ModelError("empty problem");

  StandardLP lp;
  lp.name = raw.name;
  lp.objective_shift = raw.objective_constant;

  // Column layout: shifted originals, negative parts of split columns, s_G, s_L, s_B.
  std::vector<double> shift(n0, 0.0);
  std::vector<int> neg_col(n0, -1);
  int next = n0;
  for (int j = 0; j < n0; ++j) {
    if (std::isinf(raw.lower[j])) {
      neg_col[j] = next++;
    } else {
      shift[j] = raw.lower[j];
    }
  }
  const int first_ge = next;
  const int first_le = first_ge + n_ge;
  const int first_bound = first_le + n_le;

  std::vector<int> bounded;  // columns with a finite upper bound (not fixed)
  std::vector<int> fixed;
  for (int j = 0; j < n0; ++j) {
    if (std::isinf(raw.upper[j])) continue;
    if (raw.lower[j] == raw.upper[j]) {
      fixed.push_back(j);
    } else {
      bounded.push_back(j);
    }
  }
  const int n = first_bound + static_cast<int>(bounded.size());
  const int m = n_eq + n_ge + n_le + static_cast<int>(bounded.size() + fixed.size());

  std::vector<Triplet> t;
  t.reserve(raw.nonzeros() * 2 + n);
  lp.b.assign(m, 0.0);

  auto add_block = [&](const RowBlock& block, int row_offset) {
    for (int r = 0; r < block.rows(); ++r) lp.b[row_offset + r] = block.rhs[r];
    for (const Triplet& e : block.entries) {
      const int r = row_offset + e.row;
      t.push_back({r, e.col, e.value});
      if (neg_col[e.col] >= 0) t.push_back({r, neg_col[e.col], -e.value});
      lp.b[r] -= e.value * shift[e.col];
    }
  };
  add_block(raw.eq, 0);
  add_block(raw.ge, n_eq);
  add_block(raw.le, n_eq + n_ge);
  for (int r = 0; r < n_ge; ++r) t.push_back({n_eq + r, first_ge + r, -1.0});
  for (int r = 0; r < n_le; ++r) t.push_back({n_eq + n_ge + r, first_le + r, 1.0});

  int row = n_eq + n_ge + n_le;
  for (std::size_t k = 0; k < bounded.size(); ++k, ++row) {
    const int j = bounded[k];
    t.push_back({row, j, 1.0});
    if (neg_col[j] >= 0) t.push_back({row, neg_col[j], -1.0});
    t.push_back({row, first_bound + static_cast<int>(k), 1.0});
    lp.b[row] = raw.upper[j] - shift[j];
  }
  for (int j : fixed) {
    t.push_back({row, j, 1.0});
    lp.b[row] = 0.0;
    ++row;
  }
  lp.A = SparseMatrix::from_triplets(m, n, t);

  lp.c.assign(n, 0.0);
  for (int j = 0; j < n0; ++j) {
    lp.c[j] = raw.cost[j];
    if (neg_col[j] >= 0) lp.c[neg_col[j]] = -raw.cost[j];
    lp.objective_shift += raw.cost[j] * shift[j];
  }

  lp.var_map.roles.assign(n, ColumnRole::Shifted);
  for (int j = n0; j < first_ge; ++j) lp.var_map.roles[j] = ColumnRole::NegativePart;
  for (int j = first_ge; j < first_le; ++j) lp.var_map.roles[j] = ColumnRole::SurplusG;
  for (int j = first_le; j < first_bound; ++j) lp.var_map.roles[j] = ColumnRole::SlackL;
  for (int j = first_bound; j < n; ++j) lp.var_map.roles[j] = ColumnRole::BoundSlack;

  lp.var_map.rules.resize(n0);
  for (int j = 0; j < n0; ++j) {
    auto& rule = lp.var_map.rules[j];
    rule.constant = shift[j];
    rule.terms.push_back({j, 1.0});
    if (neg_col[j] >= 0) rule.terms.push_back({neg_col[j], -1.0});
  }
  return lp;
}

RecoveredSolution recover_solution(const StandardLP& lp, std::span<const double> x_std) {
  if (x_std.size() != static_cast<std::size_t>(lp.cols())) {
    throw std::invalid_argument("recover_solution: expected " + std::to_string(lp.cols()) +
                                " entries, got " + std::to_string(x_std.size()));
  }
  RecoveredSolution out;
  out.x = lp.var_map.recover(x_std);
  out.objective = dot(lp.c, x_std) + lp.objective_shift;
  return out;
}

}  // namespace arclp
