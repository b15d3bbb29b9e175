#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace arclp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// One constraint family of the five-block Netlib form: A x (=, >=, <=) rhs.
struct RowBlock {
  std::vector<std::string> names;
  std::vector<double> rhs;
  std::vector<Triplet> entries;  // row indices are local to the block

  int rows() const { return static_cast<int>(rhs.size()); }

  friend bool operator==(const RowBlock&, const RowBlock&) = default;
};

/// An LP as read from an MPS file:
///
///   min c^T x + objective_constant
///   s.t. A_E x = b_E,  A_G x >= b_G,  A_L x <= b_L,  lower <= x <= upper.
///
/// Missing bounds are [0, +inf); free and MI variables carry lower = -inf.
struct RawLP {
  std::string name;
  std::string objective_name;
  std::vector<std::string> col_names;
  std::vector<double> cost;
  double objective_constant = 0.0;
  RowBlock eq;
  RowBlock ge;
  RowBlock le;
  std::vector<double> lower;
  std::vector<double> upper;

  int cols() const { return static_cast<int>(col_names.size()); }
  int nonzeros() const {
    return static_cast<int>(eq.entries.size() + ge.entries.size() + le.entries.size());
  }

  /// Throws ModelError when a block references a column out of range or bounds cross.
  void validate() const;

  /// c^T x + objective_constant.
  double objective(const std::vector<double>& x) const;

  friend bool operator==(const RawLP&, const RawLP&) = default;
};

/// Parses fixed- or free-format MPS text. Throws ParseError naming the offending line.
RawLP parse_mps(std::string_view text);

/// Reads a file and parses it. Throws std::runtime_error when the file cannot be read.
RawLP read_mps_file(const std::string& path);

/// Serializes to MPS. Uses the fixed layout whenever names and numbers fit its
/// columns and falls back to free format otherwise; parse_mps reads either back.
std::string write_mps(const RawLP& lp);

}  // namespace arclp
