#include "arclp/mps.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "arclp/error.hpp"

namespace arclp {

void RawLP::validate() const {
  const int n = cols();
  if (static_cast<int>(cost.size()) != n || static_cast<int>(lower.size()) != n ||
      static_cast<int>(upper.size()) != n) {
    throw ModelError("column data vectors disagree in length");
  }
  for (const RowBlock* block : {&eq, &ge, &le}) {
    if (block->names.size() != block->rhs.size()) {
      throw ModelError("row names and rhs disagree in length");
    }
    for (const Triplet& t : block->entries) {
      if (t.row < 0 || t.row >= block->rows() || t.col < 0 || t.col >= n) {
        throw ModelError("coefficient index out of range");
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    if (lower[j] > upper[j]) {
      throw ModelError("infeasible bounds on column " + col_names[j] + ": upper below lower");
    }
  }
}

double RawLP::objective(const std::vector<double>& x) const {
  double v = objective_constant;
  for (int j = 0; j < cols(); ++j) v += cost[j] * x[j];
  return v;
}

namespace {

enum class Section { None, Name, Rows, Columns, Rhs, Ranges, Bounds, End };

enum class RowKind { Objective, Free, E, G, L };

struct PendingRow {
  RowKind kind;
  std::string name;
  double rhs = 0.0;
  std::optional<double> range;
  std::vector<std::pair<int, double>> entries;  // (column, value)
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Fixed MPS layout: fields in columns 2-3, 5-12, 15-22, 25-36, 40-47, 50-61 (1-based).
constexpr std::array<std::pair<std::size_t, std::size_t>, 6> kFixedFields{
    {{1, 2}, {4, 8}, {14, 8}, {24, 12}, {39, 8}, {49, 12}}};
constexpr std::array<std::size_t, 11> kFixedGaps{0, 3, 12, 13, 22, 23, 36, 37, 38, 47, 48};

bool fits_fixed_layout(std::string_view line) {
  if (line.find('\t') != std::string_view::npos) return false;
  const auto body = line.substr(0, line.find_last_not_of(" \r") + 1);
  if (body.size() > 61) return false;
  for (std::size_t g : kFixedGaps) {
    if (g < body.size() && body[g] != ' ') return false;
  }
  return true;
}

std::vector<std::string_view> fixed_fields(std::string_view line) {
  std::vector<std::string_view> out;
  for (auto [start, len] : kFixedFields) {
    if (start >= line.size()) {
      out.emplace_back();
      continue;
    }
    out.push_back(trim(line.substr(start, len)));
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

double parse_number(std::string_view tok, std::size_t line) {
  std::string s(tok);
  std::replace_if(s.begin(), s.end(), [](char ch) { return ch == 'D' || ch == 'd'; }, 'E');
  if (s.empty()) throw ParseError(line, "missing numeric value");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ParseError(line, "bad numeric value '" + std::string(tok) + "'");
  }
  return v;
}

bool is_section_header(std::string_view line) {
  return !line.empty() && line[0] != ' ' && line[0] != '\t';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RawLP run() {
    split_lines();
    fixed_ = detect_fixed();
    for (std::size_t idx = 0; idx < lines_.size(); ++idx) {
      const std::string_view raw = lines_[idx];
      line_no_ = idx + 1;
      if (trim(raw).empty() || raw[0] == '*') continue;
      if (is_section_header(raw)) {
        header(raw);
        continue;
      }
      switch (section_) {
        case Section::Rows: row_line(raw); break;
        case Section::Columns: column_line(raw); break;
        case Section::Rhs: rhs_line(raw); break;
        case Section::Ranges: range_line(raw); break;
        case Section::Bounds: bound_line(raw); break;
        default: fail("data line outside of a section");
      }
    }
    if (section_ != Section::End) throw ParseError(0, "missing ENDATA");
    return materialize();
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

  void split_lines() {
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const auto nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) {
        if (pos < text_.size()) lines_.push_back(text_.substr(pos));
        break;
      }
      lines_.push_back(text_.substr(pos, nl - pos));
      pos = nl + 1;
    }
  }

  bool detect_fixed() const {
    for (std::string_view l : lines_) {
      if (trim(l).empty() || l[0] == '*' || is_section_header(l)) continue;
      if (!fits_fixed_layout(l)) return false;
    }
    return true;
  }

  std::vector<std::string_view> fields(std::string_view line) const {
    return fixed_ ? fixed_fields(line) : split_ws(line);
  }

  void header(std::string_view line) {
    const auto toks = split_ws(line);
    const std::string_view key = toks.front();
    Section next = Section::None;
    if (key == "NAME") next = Section::Name;
    else if (key == "ROWS") next = Section::Rows;
    else if (key == "COLUMNS") next = Section::Columns;
    else if (key == "RHS") next = Section::Rhs;
    else if (key == "RANGES") next = Section::Ranges;
    else if (key == "BOUNDS") next = Section::Bounds;
    else if (key == "ENDATA") next = Section::End;
    else fail("unknown or unsupported section '" + std::string(key) + "'");

    // Required order: NAME ROWS COLUMNS [RHS] [RANGES] [BOUNDS] ENDATA.
    if (static_cast<int>(next) <= static_cast<int>(section_)) {
      fail("section " + std::string(key) + " out of order");
    }
    if (next != Section::Name && section_ == Section::None) fail("expected NAME section first");
    if (next > Section::Rows && section_ < Section::Rows) fail("ROWS section missing");
    if (next > Section::Columns && section_ < Section::Columns) fail("COLUMNS section missing");
    if (next > Section::Columns && col_names_.empty()) fail("no columns");
    if (next == Section::Name && toks.size() > 1) name_ = std::string(toks[1]);
    section_ = next;
  }

  void row_line(std::string_view line) {
    const auto f = fields(line);
    if (f.size() < 2) fail("ROWS entry needs a type and a name");
    RowKind kind;
    if (f[0] == "N") kind = objective_row_ < 0 ? RowKind::Objective : RowKind::Free;
    else if (f[0] == "E") kind = RowKind::E;
    else if (f[0] == "G") kind = RowKind::G;
    else if (f[0] == "L") kind = RowKind::L;
    else fail("unknown row type '" + std::string(f[0]) + "'");
    std::string name(f[1]);
    if (row_index_.count(name)) fail("duplicate row name '" + name + "'");
    row_index_.emplace(name, static_cast<int>(rows_.size()));
    if (kind == RowKind::Objective) objective_row_ = static_cast<int>(rows_.size());
    rows_.push_back(PendingRow{kind, std::move(name), 0.0, std::nullopt, {}});
  }

  int lookup_row(std::string_view name) const {
    const auto it = row_index_.find(std::string(name));
    if (it == row_index_.end()) fail("unknown row '" + std::string(name) + "'");
    return it->second;
  }

  int lookup_col(std::string_view name) const {
    const auto it = col_index_.find(std::string(name));
    if (it == col_index_.end()) fail("unknown column '" + std::string(name) + "'");
    return it->second;
  }

  void column_line(std::string_view line) {
    const auto f = fields(line);
    if (f.size() >= 3 && (f[1] == "'MARKER'" || f[2] == "'MARKER'")) fail("integer markers are not supported");
    // Fixed layout puts nothing in field 1; free format starts with the column name.
    std::size_t off = fixed_ ? 1 : 0;
    if (fixed_ && !f.empty() && !f[0].empty()) fail("unexpected text in columns 2-3");
    if (f.size() < off + 3 || (f.size() != off + 3 && f.size() != off + 5)) fail("malformed COLUMNS entry");
    const std::string col(f[off]);
    auto it = col_index_.find(col);
    int j;
    if (it == col_index_.end()) {
      j = static_cast<int>(col_names_.size());
      col_index_.emplace(col, j);
      col_names_.push_back(col);
      seen_.emplace_back();
      lower_.push_back(0.0);
      upper_.push_back(kInf);
      lower_set_.push_back(false);
    } else {
      j = it->second;
    }
    for (std::size_t k = off + 1; k + 1 < f.size(); k += 2) {
      const int r = lookup_row(f[k]);
      const double v = parse_number(f[k + 1], line_no_);
      if (!seen_[j].emplace(r, true).second) fail("duplicate entry for column " + col + " in row " + rows_[r].name);
      if (v != 0.0) rows_[r].entries.emplace_back(j, v);
    }
  }

  // RHS and RANGES share a layout: [set] row value [row value].
  template <typename Apply>
  void pair_line(std::string_view line, Apply apply) {
    auto f = fields(line);
    std::size_t off;
    if (fixed_) {
      if (!f.empty() && !f[0].empty()) fail("unexpected text in columns 2-3");
      off = 2;
      if (f.size() < 4) fail("malformed entry");
    } else {
      off = (f.size() == 3 || f.size() == 5) ? 1 : 0;
      if (f.size() < off + 2 || (f.size() - off) % 2 != 0) fail("malformed entry");
    }
    for (std::size_t k = off; k + 1 < f.size(); k += 2) {
      if (f[k].empty()) continue;
      apply(lookup_row(f[k]), parse_number(f[k + 1], line_no_));
    }
  }

  void rhs_line(std::string_view line) {
    pair_line(line, [&](int r, double v) {
      if (r == objective_row_) {
        objective_constant_ = -v;
      } else {
        rows_[r].rhs = v;
      }
    });
  }

  void range_line(std::string_view line) {
    pair_line(line, [&](int r, double v) {
      if (rows_[r].kind == RowKind::Objective || rows_[r].kind == RowKind::Free) {
        fail("RANGES entry on a free row");
      }
      rows_[r].range = v;
    });
  }

  void bound_line(std::string_view line) {
    auto f = fields(line);
    if (f.empty()) fail("malformed BOUNDS entry");
    const std::string type(f[0]);
    const bool needs_value = type == "LO" || type == "UP" || type == "FX";
    const bool no_value = type == "FR" || type == "MI" || type == "PL";
    if (!needs_value && !no_value) fail("unknown bound type '" + type + "'");

    std::string_view col_name;
    std::optional<double> value;
    if (fixed_) {
      if (f.size() < 3) fail("malformed BOUNDS entry");
      col_name = f[2];
      if (f.size() >= 4 && !f[3].empty()) value = parse_number(f[3], line_no_);
    } else {
      const std::size_t with_set = needs_value ? 4 : 3;
      if (f.size() == with_set) {
        col_name = f[2];
      } else if (f.size() == with_set - 1) {
        col_name = f[1];
      } else if (no_value && f.size() == 4) {
        col_name = f[2];  // some writers emit a dummy value for FR/MI/PL
      } else {
        fail("malformed BOUNDS entry");
      }
      if (needs_value) value = parse_number(f.back(), line_no_);
    }
    if (needs_value && !value) fail("bound type " + type + " requires a value");

    const int j = lookup_col(col_name);
    double& lo = lower_[j];
    double& up = upper_[j];
    if (type == "LO") {
      lo = *value;
    } else if (type == "UP") {
      // Classic MPS rule: a negative upper bound on a default-bounded column frees it below.
      if (*value < 0.0 && lo == 0.0 && !lower_set_[j]) lo = -kInf;
      up = *value;
    } else if (type == "FX") {
      lo = *value;
      up = *value;
    } else if (type == "FR") {
      lo = -kInf;
      up = kInf;
    } else if (type == "MI") {
      lo = -kInf;
    } else {
      up = kInf;
    }
    if (type == "LO" || type == "FX" || type == "FR" || type == "MI") lower_set_[j] = true;
  }

  RawLP materialize() {
    if (col_names_.empty()) throw ParseError(0, "no columns");
    if (objective_row_ < 0) throw ParseError(0, "no objective (N) row");
    RawLP lp;
    lp.name = name_;
    lp.objective_name = rows_[objective_row_].name;
    lp.col_names = col_names_;
    lp.objective_constant = objective_constant_;
    lp.cost.assign(col_names_.size(), 0.0);
    for (auto [j, v] : rows_[objective_row_].entries) lp.cost[j] = v;
    lp.lower = lower_;
    lp.upper = upper_;

    auto push = [](RowBlock& block, const std::string& name, double rhs,
                   const std::vector<std::pair<int, double>>& entries) {
      const int r = block.rows();
      block.names.push_back(name);
      block.rhs.push_back(rhs);
      for (auto [j, v] : entries) block.entries.push_back({r, j, v});
    };

    for (const PendingRow& row : rows_) {
      switch (row.kind) {
        case RowKind::Objective:
        case RowKind::Free:
          break;
        case RowKind::E:
          if (!row.range) {
            push(lp.eq, row.name, row.rhs, row.entries);
          } else if (*row.range >= 0) {
            push(lp.ge, row.name, row.rhs, row.entries);
            push(lp.le, row.name + "#range", row.rhs + *row.range, row.entries);
          } else {
            push(lp.ge, row.name, row.rhs + *row.range, row.entries);
            push(lp.le, row.name + "#range", row.rhs, row.entries);
          }
          break;
        case RowKind::G:
          push(lp.ge, row.name, row.rhs, row.entries);
          if (row.range) push(lp.le, row.name + "#range", row.rhs + std::abs(*row.range), row.entries);
          break;
        case RowKind::L:
          if (row.range) push(lp.ge, row.name + "#range", row.rhs - std::abs(*row.range), row.entries);
          push(lp.le, row.name, row.rhs, row.entries);
          break;
      }
    }
    try {
      lp.validate();
    } catch (const ModelError& e) {
      throw ParseError(0, e.what());
    }
    return lp;
  }

  std::string_view text_;
  std::vector<std::string_view> lines_;
  bool fixed_ = true;
  std::size_t line_no_ = 0;
  Section section_ = Section::None;
  std::string name_;
  std::vector<PendingRow> rows_;
  std::unordered_map<std::string, int> row_index_;
  int objective_row_ = -1;
  double objective_constant_ = 0.0;
  std::vector<std::string> col_names_;
  std::unordered_map<std::string, int> col_index_;
  std::vector<std::map<int, bool>> seen_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<bool> lower_set_;
};

}  // namespace

RawLP parse_mps(std::string_view text) { return Parser(text).run(); }

RawLP read_mps_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mps(buf.str());
}

namespace {

std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string pad_left(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t w) {
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

struct Writer {
  bool fixed;
  std::ostringstream out;

  // fields: f1 (type code), f2, f3, f4 (number), f5, f6 (number)
  void line(const std::string& f1, const std::string& f2, const std::string& f3 = {},
            const std::string& f4 = {}, const std::string& f5 = {}, const std::string& f6 = {}) {
    std::string l;
    if (fixed) {
      l = " " + pad_right(f1, 2) + " " + pad_right(f2, 8);
      if (!f3.empty() || !f4.empty()) l += "  " + pad_right(f3, 8) + "  " + pad_left(f4, 12);
      if (!f5.empty()) l += "   " + pad_right(f5, 8) + "  " + pad_left(f6, 12);
      l = l.substr(0, l.find_last_not_of(' ') + 1);
    } else {
      l = " ";
      for (const std::string* f : {&f1, &f2, &f3, &f4, &f5, &f6}) {
        if (!f->empty()) l += " " + *f;
      }
    }
    out << l << '\n';
  }
};

}  // namespace

std::string write_mps(const RawLP& lp) {
  bool fixed = true;
  auto name_ok = [](const std::string& s) {
    return !s.empty() && s.size() <= 8 && s.find_first_of(" \t") == std::string::npos;
  };
  auto num_ok = [](double v) { return shortest(v).size() <= 12; };
  for (const auto& s : lp.col_names) fixed = fixed && name_ok(s);
  for (const RowBlock* b : {&lp.eq, &lp.ge, &lp.le}) {
    for (const auto& s : b->names) fixed = fixed && name_ok(s);
    for (double v : b->rhs) fixed = fixed && num_ok(v);
    for (const Triplet& t : b->entries) fixed = fixed && num_ok(t.value);
  }
  for (double v : lp.cost) fixed = fixed && num_ok(v);
  for (double v : lp.lower) fixed = fixed && (std::isinf(v) || num_ok(v));
  for (double v : lp.upper) fixed = fixed && (std::isinf(v) || num_ok(v));
  const std::string obj = lp.objective_name.empty() ? "COST" : lp.objective_name;
  fixed = fixed && name_ok(obj) && num_ok(lp.objective_constant);

  Writer w{fixed, {}};
  w.out << "NAME          " << (lp.name.empty() ? "UNNAMED" : lp.name) << '\n';
  w.out << "ROWS\n";
  w.line("N", obj);
  for (const auto& s : lp.eq.names) w.line("E", s);
  for (const auto& s : lp.ge.names) w.line("G", s);
  for (const auto& s : lp.le.names) w.line("L", s);

  // Column-major listing of (row name, value), objective first.
  std::vector<std::vector<std::pair<std::string, double>>> by_col(lp.cols());
  for (int j = 0; j < lp.cols(); ++j) {
    if (lp.cost[j] != 0.0) by_col[j].emplace_back(obj, lp.cost[j]);
  }
  for (const RowBlock* b : {&lp.eq, &lp.ge, &lp.le}) {
    for (const Triplet& t : b->entries) by_col[t.col].emplace_back(b->names[t.row], t.value);
  }
  w.out << "COLUMNS\n";
  for (int j = 0; j < lp.cols(); ++j) {
    auto& e = by_col[j];
    if (e.empty()) e.emplace_back(obj, 0.0);
    for (std::size_t k = 0; k < e.size(); k += 2) {
      if (k + 1 < e.size()) {
        w.line("", lp.col_names[j], e[k].first, shortest(e[k].second), e[k + 1].first, shortest(e[k + 1].second));
      } else {
        w.line("", lp.col_names[j], e[k].first, shortest(e[k].second));
      }
    }
  }
  w.out << "RHS\n";
  if (lp.objective_constant != 0.0) w.line("", "RHS", obj, shortest(-lp.objective_constant));
  for (const RowBlock* b : {&lp.eq, &lp.ge, &lp.le}) {
    for (int r = 0; r < b->rows(); ++r) {
      if (b->rhs[r] != 0.0) w.line("", "RHS", b->names[r], shortest(b->rhs[r]));
    }
  }
  Writer bw{fixed, {}};
  for (int j = 0; j < lp.cols(); ++j) {
    const double lo = lp.lower[j];
    const double up = lp.upper[j];
    const std::string& c = lp.col_names[j];
    if (std::isinf(lo) && std::isinf(up)) {
      bw.line("FR", "BND", c);
      continue;
    }
    if (lo == up) {
      bw.line("FX", "BND", c, shortest(lo));
      continue;
    }
    if (std::isinf(lo)) bw.line("MI", "BND", c);
    else if (lo != 0.0 || (!std::isinf(up) && up < 0.0)) bw.line("LO", "BND", c, shortest(lo));
    if (!std::isinf(up)) bw.line("UP", "BND", c, shortest(up));
  }
  const std::string bstr = bw.out.str();
  if (!bstr.empty()) w.out << "BOUNDS\n" << bstr;
  w.out << "ENDATA\n";
  return w.out.str();
}

}  // namespace arclp
