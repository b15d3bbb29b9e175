#include "arclp/presolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace arclp {

const char* to_string(PresolveVerdict v) {
  switch (v) {
    case PresolveVerdict::Reduced: return "Reduced";
    case PresolveVerdict::Infeasible: return "Infeasible";
    case PresolveVerdict::Unbounded: return "Unbounded";
  }
  return "?";
}

std::string PresolveReport::to_text() const {
  std::ostringstream os;
  os << "presolve: " << to_string(verdict) << "\n"
     << "  size " << cols_before << " x " << rows_before << " -> " << cols_after << " x " << rows_after
     << " (n x m)\n"
     << "  empty rows " << empty_rows << ", empty columns " << empty_cols << ", singleton rows "
     << singleton_rows << ", duplicate rows " << duplicate_rows << ", dependent rows " << dependent_rows
     << "\n";
  for (const auto& l : log) os << "  " << l << "\n";
  return os.str();
}

namespace {

constexpr double kNotFixed = std::numeric_limits<double>::quiet_NaN();

class Presolver {
 public:
  Presolver(const StandardLP& lp, const PresolveOptions& opts)
      : lp_(lp), opts_(opts), rows_(lp.A.transpose()), b_(lp.b) {
    const int m = lp.rows();
    const int n = lp.cols();
    row_active_.assign(m, true);
    col_active_.assign(n, true);
    fixed_.assign(n, kNotFixed);
    report_.rows_before = m;
    report_.cols_before = n;
  }

  PresolveResult run() {
    bool changed = true;
    while (changed && report_.verdict == PresolveVerdict::Reduced) {
      changed = false;
      changed |= row_pass();
      if (report_.verdict != PresolveVerdict::Reduced) break;
      changed |= column_pass();
      if (report_.verdict != PresolveVerdict::Reduced) break;
      changed |= duplicate_pass();
    }
    if (report_.verdict == PresolveVerdict::Reduced) rank_guard();
    PresolveResult out;
    if (report_.verdict == PresolveVerdict::Reduced) out.lp = build();
    report_.rows_after = out.lp.rows();
    report_.cols_after = out.lp.cols();
    out.report = std::move(report_);
    return out;
  }

 private:
  double row_tol(int i) const { return opts_.feasibility_tol * std::max(1.0, std::abs(lp_.b[i])); }

  void verdict(PresolveVerdict v, std::string why) {
    report_.verdict = v;
    report_.log.push_back(std::move(why));
  }

  // Active entries of row i as (col, value).
  std::vector<std::pair<int, double>> row_entries(int i) const {
    std::vector<std::pair<int, double>> out;
    const auto cols = rows_.col_rows(i);
    const auto vals = rows_.col_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (col_active_[cols[k]]) out.emplace_back(cols[k], vals[k]);
    }
    return out;
  }

  void fix_column(int j, double v) {
    fixed_[j] = v;
    col_active_[j] = false;
    if (v == 0.0) return;
    const auto rows = lp_.A.col_rows(j);
    const auto vals = lp_.A.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (row_active_[rows[k]]) b_[rows[k]] -= vals[k] * v;
    }
  }

  bool row_pass() {
    bool changed = false;
    for (int i = 0; i < lp_.rows(); ++i) {
      if (!row_active_[i]) continue;
      const auto e = row_entries(i);
      if (e.empty()) {
        if (std::abs(b_[i]) > row_tol(i)) {
          verdict(PresolveVerdict::Infeasible, "empty row " + std::to_string(i) + " with nonzero rhs");
          return changed;
        }
        row_active_[i] = false;
        ++report_.empty_rows;
        report_.log.push_back("removed empty row " + std::to_string(i));
        changed = true;
      } else if (e.size() == 1) {
        const auto [j, a] = e.front();
        double v = b_[i] / a;
        if (v < 0.0) {
          if (std::abs(b_[i]) > row_tol(i)) {
            verdict(PresolveVerdict::Infeasible,
                    "singleton row " + std::to_string(i) + " forces column " + std::to_string(j) + " negative");
            return changed;
          }
          v = 0.0;
        }
        row_active_[i] = false;
        fix_column(j, v);
        ++report_.singleton_rows;
        std::ostringstream os;
        os << "singleton row " << i << " fixes column " << j << " at " << v;
        report_.log.push_back(os.str());
        changed = true;
      }
    }
    return changed;
  }

  bool column_pass() {
    bool changed = false;
    for (int j = 0; j < lp_.cols(); ++j) {
      if (!col_active_[j]) continue;
      bool empty = true;
      for (int r : lp_.A.col_rows(j)) {
        if (row_active_[r]) {
          empty = false;
          break;
        }
      }
      if (!empty) continue;
      if (lp_.c[j] < 0.0) {
        verdict(PresolveVerdict::Unbounded, "empty column " + std::to_string(j) + " with negative cost");
        return changed;
      }
      fix_column(j, 0.0);
      ++report_.empty_cols;
      report_.log.push_back("removed empty column " + std::to_string(j));
      changed = true;
    }
    return changed;
  }

  bool duplicate_pass() {
    std::map<std::vector<int>, std::vector<int>> by_pattern;
    std::vector<std::vector<std::pair<int, double>>> entries(lp_.rows());
    for (int i = 0; i < lp_.rows(); ++i) {
      if (!row_active_[i]) continue;
      entries[i] = row_entries(i);
      std::vector<int> pattern;
      pattern.reserve(entries[i].size());
      for (auto [j, v] : entries[i]) pattern.push_back(j);
      by_pattern[std::move(pattern)].push_back(i);
    }
    bool changed = false;
    for (auto& [pattern, group] : by_pattern) {
      if (group.size() < 2) continue;
      for (std::size_t p = 0; p < group.size(); ++p) {
        const int i = group[p];
        if (!row_active_[i]) continue;
        for (std::size_t q = p + 1; q < group.size(); ++q) {
          const int k = group[q];
          if (!row_active_[k]) continue;
          const double ratio = entries[k].front().second / entries[i].front().second;
          bool multiple = true;
          for (std::size_t t = 0; t < entries[i].size() && multiple; ++t) {
            const double expect = ratio * entries[i][t].second;
            multiple = std::abs(entries[k][t].second - expect) <= 1e-12 * std::abs(expect);
          }
          if (!multiple) continue;
          if (std::abs(b_[k] - ratio * b_[i]) > row_tol(k)) {
            verdict(PresolveVerdict::Infeasible,
                    "rows " + std::to_string(i) + " and " + std::to_string(k) + " are parallel with inconsistent rhs");
            return changed;
          }
          row_active_[k] = false;
          ++report_.duplicate_rows;
          report_.log.push_back("removed row " + std::to_string(k) + " (multiple of row " + std::to_string(i) + ")");
          changed = true;
        }
      }
    }
    return changed;
  }

  // Cholesky of A A^T with pivot dropping; dropped pivots mark dependent rows.
  void rank_guard() {
    std::vector<int> rows;
    for (int i = 0; i < lp_.rows(); ++i) {
      if (row_active_[i]) rows.push_back(i);
    }
    const int m = static_cast<int>(rows.size());
    if (m == 0) return;
    if (m > opts_.rank_guard_max_rows) {
      report_.log.push_back("rank guard skipped (" + std::to_string(m) + " rows)");
      return;
    }
    std::vector<int> local(lp_.rows(), -1);
    for (int r = 0; r < m; ++r) local[rows[r]] = r;

    std::vector<double> M(static_cast<std::size_t>(m) * m, 0.0);
    auto at = [&](int i, int j) -> double& { return M[static_cast<std::size_t>(i) * m + j]; };
    for (int j = 0; j < lp_.cols(); ++j) {
      if (!col_active_[j]) continue;
      const auto cr = lp_.A.col_rows(j);
      const auto cv = lp_.A.col_values(j);
      for (std::size_t p = 0; p < cr.size(); ++p) {
        const int a = local[cr[p]];
        if (a < 0) continue;
        for (std::size_t q = 0; q <= p; ++q) {
          const int c = local[cr[q]];
          if (c < 0) continue;
          at(std::max(a, c), std::min(a, c)) += cv[p] * cv[q];
        }
      }
    }
    std::vector<double> diag(m);
    for (int k = 0; k < m; ++k) diag[k] = at(k, k);

    std::vector<bool> dropped(m, false);
    for (int k = 0; k < m; ++k) {
      double d = at(k, k);
      for (int p = 0; p < k; ++p) d -= at(k, p) * at(k, p);
      if (d <= opts_.dependency_tol * diag[k] || diag[k] == 0.0) {
        dropped[k] = true;
        for (int p = 0; p < k; ++p) at(k, p) = 0.0;
        for (int i = k; i < m; ++i) at(i, k) = 0.0;
        continue;
      }
      const double l = std::sqrt(d);
      at(k, k) = l;
      for (int i = k + 1; i < m; ++i) {
        double s = at(i, k);
        for (int p = 0; p < k; ++p) s -= at(i, p) * at(k, p);
        at(i, k) = s / l;
      }
    }
    if (std::none_of(dropped.begin(), dropped.end(), [](bool v) { return v; })) return;

    // Least-squares point of the kept rows; each dropped row must agree with it.
    std::vector<double> y(m, 0.0);
    for (int k = 0; k < m; ++k) {
      if (dropped[k]) continue;
      double s = b_[rows[k]];
      for (int p = 0; p < k; ++p) s -= at(k, p) * y[p];
      y[k] = s / at(k, k);
    }
    for (int k = m - 1; k >= 0; --k) {
      if (dropped[k]) continue;
      double s = y[k];
      for (int i = k + 1; i < m; ++i) s -= at(i, k) * y[i];
      y[k] = s / at(k, k);
    }
    std::vector<double> x(lp_.cols(), 0.0);
    for (int j = 0; j < lp_.cols(); ++j) {
      if (!col_active_[j]) continue;
      const auto cr = lp_.A.col_rows(j);
      const auto cv = lp_.A.col_values(j);
      for (std::size_t p = 0; p < cr.size(); ++p) {
        const int r = local[cr[p]];
        if (r >= 0 && !dropped[r]) x[j] += cv[p] * y[r];
      }
    }
    for (int k = 0; k < m; ++k) {
      if (!dropped[k]) continue;
      const int i = rows[k];
      double ax = 0.0;
      double scale = 1.0 + std::abs(b_[i]);
      for (auto [j, v] : row_entries(i)) {
        ax += v * x[j];
        scale += std::abs(v * x[j]);
      }
      if (std::abs(ax - b_[i]) > 1e-8 * scale) {
        verdict(PresolveVerdict::Infeasible, "dependent row " + std::to_string(i) + " has inconsistent rhs");
        return;
      }
      row_active_[i] = false;
      ++report_.dependent_rows;
      report_.log.push_back("removed linearly dependent row " + std::to_string(i));
    }
  }

  StandardLP build() const {
    std::vector<int> keep_rows;
    std::vector<int> keep_cols;
    std::vector<int> new_col(lp_.cols(), -1);
    for (int i = 0; i < lp_.rows(); ++i) {
      if (row_active_[i]) keep_rows.push_back(i);
    }
    for (int j = 0; j < lp_.cols(); ++j) {
      if (col_active_[j]) {
        new_col[j] = static_cast<int>(keep_cols.size());
        keep_cols.push_back(j);
      }
    }
    StandardLP out;
    out.name = lp_.name;
    out.A = lp_.A.submatrix(keep_rows, keep_cols);
    for (int i : keep_rows) out.b.push_back(b_[i]);
    out.objective_shift = lp_.objective_shift;
    for (int j = 0; j < lp_.cols(); ++j) {
      if (col_active_[j]) {
        out.c.push_back(lp_.c[j]);
        out.var_map.roles.push_back(lp_.var_map.roles[j]);
      } else {
        out.objective_shift += lp_.c[j] * fixed_[j];
      }
    }
    out.var_map.rules.reserve(lp_.var_map.rules.size());
    for (const auto& rule : lp_.var_map.rules) {
      VarMap::Rule r;
      r.constant = rule.constant;
      for (const auto& t : rule.terms) {
        if (new_col[t.col] >= 0) {
          r.terms.push_back({new_col[t.col], t.coef});
        } else {
          r.constant += t.coef * fixed_[t.col];
        }
      }
      out.var_map.rules.push_back(std::move(r));
    }
    return out;
  }

  const StandardLP& lp_;
  PresolveOptions opts_;
  SparseMatrix rows_;  // A^T: column i of rows_ is row i of A
  Vec b_;
  std::vector<bool> row_active_;
  std::vector<bool> col_active_;
  std::vector<double> fixed_;
  PresolveReport report_;
};

}  // namespace

PresolveResult presolve(const StandardLP& lp, const PresolveOptions& opts) {
  return Presolver(lp, opts).run();
}

}  // namespace arclp
