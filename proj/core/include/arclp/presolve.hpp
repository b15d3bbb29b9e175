#pragma once

#include <string>
#include <vector>

#include "arclp/standardize.hpp"

namespace arclp {

enum class PresolveVerdict { Reduced, Infeasible, Unbounded };

const char* to_string(PresolveVerdict v);

struct PresolveReport {
  PresolveVerdict verdict = PresolveVerdict::Reduced;
  int rows_before = 0;
  int cols_before = 0;
  int rows_after = 0;
  int cols_after = 0;
  int empty_rows = 0;
  int empty_cols = 0;
  int singleton_rows = 0;
  int duplicate_rows = 0;
  int dependent_rows = 0;
  std::vector<std::string> log;  // one line per rule application

  std::string to_text() const;
};

struct PresolveOptions {
  double feasibility_tol = 1e-9;
  /// Relative pivot below which a row of A A^T counts as linearly dependent.
  double dependency_tol = 1e-11;
  /// The rank guard factors A A^T densely; it is skipped above this row count.
  int rank_guard_max_rows = 4000;
};

struct PresolveResult {
  StandardLP lp;  // meaningful only when report.verdict == Reduced
  PresolveReport report;
};

/// Empty rows, empty columns, singleton rows, duplicate rows and linearly
/// dependent rows, iterated to a fixpoint. Primal values of eliminated
/// columns are folded into var_map and objective_shift.
PresolveResult presolve(const StandardLP& lp, const PresolveOptions& opts = {});

}  // namespace arclp
