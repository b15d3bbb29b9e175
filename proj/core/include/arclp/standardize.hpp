#pragma once

#include <span>
#include <string>
#include <vector>

#include "arclp/mps.hpp"
#include "arclp/sparse.hpp"

namespace arclp {

/// What a standard-form column stands for.
enum class ColumnRole { Shifted, NegativePart, SurplusG, SlackL, BoundSlack };

/// Maps a standard-form point back to the original variables:
///   x_b[i] = constant + sum(coef * x_std[col]) over the rule's terms.
struct VarMap {
  struct Term {
    int col = 0;
    double coef = 0.0;
  };
  struct Rule {
    std::vector<Term> terms;
    double constant = 0.0;
  };

  std::vector<Rule> rules;         // one per original column
  std::vector<ColumnRole> roles;   // one per standard-form column

  Vec recover(std::span<const double> x_std) const;
};

/// min c^T x  s.t.  A x = b, x >= 0; objective in the original space is
/// c^T x + objective_shift.
struct StandardLP {
  std::string name;
  SparseMatrix A;
  Vec b;
  Vec c;
  double objective_shift = 0.0;
  VarMap var_map;

  int rows() const { return A.rows(); }
  int cols() const { return A.cols(); }
};

/// Slack/shift transformation of the five-block form. Free and MI columns are
/// split as x = x+ - x-; FX columns become a singleton row x' = 0 that presolve
/// eliminates. Throws ModelError on crossed bounds or an empty problem.
StandardLP to_standard_form(const RawLP& raw);

struct RecoveredSolution {
  Vec x;             // original-space variables
  double objective;  // c^T x_std + objective_shift
};

/// Throws std::invalid_argument when x_std does not have lp.cols() entries.
RecoveredSolution recover_solution(const StandardLP& lp, std::span<const double> x_std);

}  // namespace arclp
