#include <doctest.h>

#include <random>

#include "arclp/newton.hpp"
#include "arclp/presolve.hpp"
#include "arclp/solver.hpp"
#include "oracles.hpp"

using namespace arclp;

namespace {

StandardLP make_lp(int m, int n, std::vector<double> dense_A, Vec b, Vec c) {
  StandardLP lp;
  lp.name = "t";
  lp.A = SparseMatrix::from_dense(m, n, dense_A);
  lp.b = std::move(b);
  lp.c = std::move(c);
  lp.var_map.roles.assign(n, ColumnRole::Shifted);
  lp.var_map.rules.resize(n);
  for (int j = 0; j < n; ++j) lp.var_map.rules[j].terms.push_back({j, 1.0});
  return lp;
}

double solved_objective(const StandardLP& lp) {
  SolverConfig cfg;
  cfg.epsilon = 1e-10;
  const SolveResult r = solve(lp, cfg);
  REQUIRE(r.status == SolveStatus::Optimal);
  return r.objective;
}

}  // namespace

TEST_CASE("zero row with zero rhs is removed") {
  const auto pr = presolve(make_lp(2, 2, {1, 1, 0, 0}, {2, 0}, {1, 2}));
  REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
  CHECK(pr.report.empty_rows == 1);
  CHECK(pr.lp.rows() == 1);
  CHECK(pr.lp.cols() == 2);
}

TEST_CASE("zero row with nonzero rhs is infeasible") {
  const auto pr = presolve(make_lp(2, 2, {1, 1, 0, 0}, {2, 1}, {1, 2}));
  CHECK(pr.report.verdict == PresolveVerdict::Infeasible);
}

TEST_CASE("empty column with nonnegative cost is dropped at zero") {
  const auto pr = presolve(make_lp(1, 3, {1, 0, 1}, {2}, {1, 5, 2}));
  REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
  CHECK(pr.report.empty_cols == 1);
  CHECK(pr.lp.cols() == 2);
  const Vec x = pr.lp.var_map.recover(Vec{1.5, 0.5});
  CHECK(x == Vec{1.5, 0.0, 0.5});
}

TEST_CASE("empty column with negative cost is unbounded") {
  const auto pr = presolve(make_lp(1, 3, {1, 0, 1}, {2}, {1, -5, 2}));
  CHECK(pr.report.verdict == PresolveVerdict::Unbounded);
}

TEST_CASE("singleton row fixes its variable") {
  // x0 + x1 + x2 = 4, 2 x1 = 2  ->  x1 = 1, remaining row x0 + x2 = 3
  const auto pr = presolve(make_lp(2, 3, {1, 1, 1, 0, 2, 0}, {4, 2}, {1, 3, 2}));
  REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
  CHECK(pr.report.singleton_rows == 1);
  REQUIRE(pr.lp.rows() == 1);
  REQUIRE(pr.lp.cols() == 2);
  CHECK(pr.lp.b == Vec{3});
  CHECK(pr.lp.objective_shift == 3.0);
  CHECK(pr.lp.var_map.recover(Vec{1, 2}) == Vec{1, 1, 2});
}

TEST_CASE("singleton row with a negative solution is infeasible") {
  const auto pr = presolve(make_lp(2, 2, {1, 1, 0, 2}, {4, -2}, {1, 1}));
  CHECK(pr.report.verdict == PresolveVerdict::Infeasible);
}

TEST_CASE("duplicate rows") {
  SUBCASE("consistent multiple is removed") {
    const auto pr = presolve(make_lp(2, 3, {1, 2, 3, -2, -4, -6}, {1, -2}, {1, 1, 1}));
    REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
    CHECK(pr.report.duplicate_rows == 1);
    CHECK(pr.lp.rows() == 1);
  }
  SUBCASE("inconsistent multiple is infeasible") {
    const auto pr = presolve(make_lp(2, 3, {1, 2, 3, 2, 4, 6}, {1, 3}, {1, 1, 1}));
    CHECK(pr.report.verdict == PresolveVerdict::Infeasible);
  }
}

TEST_CASE("linearly dependent row is removed by the rank guard") {
  // row 2 = row 0 + row 1, not a scalar multiple of either
  const auto pr = presolve(make_lp(3, 4, {1, 0, 1, 0, 0, 1, 0, 1, 1, 1, 1, 1}, {2, 3, 5}, {1, 1, 1, 1}));
  REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
  CHECK(pr.report.dependent_rows == 1);
  CHECK(pr.lp.rows() == 2);
  // full row rank: A A^T factors without a shift
  const Vec ones(pr.lp.cols(), 1.0);
  CHECK(factor(pr.lp.A, ones, ones).regularization() == 0.0);

  const auto bad = presolve(make_lp(3, 4, {1, 0, 1, 0, 0, 1, 0, 1, 1, 1, 1, 1}, {2, 3, 6}, {1, 1, 1, 1}));
  CHECK(bad.report.verdict == PresolveVerdict::Infeasible);
}

TEST_CASE("rules cascade to a fixpoint") {
  // fixing x1 from row 1 empties column 1 in row 0 only; row 2 becomes empty once x1 is gone
  const auto pr = presolve(make_lp(3, 3, {1, 1, 1, 0, 1, 0, 0, 3, 0}, {5, 1, 3}, {1, 1, 1}));
  REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
  CHECK(pr.lp.rows() == 1);
  CHECK(pr.lp.cols() == 2);
  CHECK(pr.lp.b == Vec{4});
}

TEST_CASE("report prints as text") {
  const auto pr = presolve(make_lp(2, 2, {1, 1, 0, 0}, {2, 0}, {1, 2}));
  const std::string text = pr.report.to_text();
  CHECK(text.find("removed empty row") != std::string::npos);
  CHECK(std::string(to_string(PresolveVerdict::Infeasible)) == "Infeasible");
}

TEST_CASE("presolve leaves the optimal objective unchanged") {
  // singleton row, empty column with positive cost and a full-rank remainder
  const StandardLP before = make_lp(3, 5,
                                    {1, 1, 1, 0, 0,   //
                                     0, 2, 0, 0, 0,   //
                                     1, 0, 0, 0, 1},  //
                                    {4, 1, 2}, {2, 3, 1, 4, 1});
  const auto pr = presolve(before);
  REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
  CHECK(pr.lp.cols() < before.cols());
  const double want = *oracle::vertex_enumeration(before);
  CHECK(std::abs(solved_objective(before) - want) <= 1e-8 * std::max(1.0, std::abs(want)));
  CHECK(std::abs(solved_objective(pr.lp) - solved_objective(before)) <= 1e-8 * std::max(1.0, std::abs(want)));
}

TEST_CASE("random LPs with appended duplicate and dependent rows keep their optimum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const auto r = oracle::random_lp(rng, 3, 7);
    StandardLP lp = r.lp;
    std::vector<Triplet> t = lp.A.triplets();
    for (int j = 0; j < lp.cols(); ++j) {
      t.push_back({3, j, 2.0 * lp.A.at(0, j)});
      t.push_back({4, j, lp.A.at(1, j) - lp.A.at(2, j)});
    }
    lp.A = SparseMatrix::from_triplets(5, lp.cols(), t);
    lp.b.push_back(2.0 * lp.b[0]);
    lp.b.push_back(lp.b[1] - lp.b[2]);
    const auto pr = presolve(lp);
    REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
    CHECK(pr.lp.rows() == 3);
    const double want = *oracle::vertex_enumeration(r.lp);
    CHECK(std::abs(solved_objective(pr.lp) - want) <= 1e-8 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("KB2 reduces to 77 columns and 52 rows") {
  const auto raw = read_mps_file(std::string(ARCLP_DATA_DIR) + "/netlib/KB2.mps");
  const auto pr = presolve(to_standard_form(raw));
  REQUIRE(pr.report.verdict == PresolveVerdict::Reduced);
  CHECK(pr.lp.cols() == 77);
  CHECK(pr.lp.rows() == 52);
}
