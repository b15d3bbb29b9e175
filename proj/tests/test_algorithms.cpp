#include <doctest.h>

#include <cmath>
#include <random>

#include "arclp/harness.hpp"
#include "arclp/initial_point.hpp"
#include "arclp/solver.hpp"
#include "arclp/step.hpp"
#include "oracles.hpp"

using namespace arclp;

namespace {

StandardLP netlib(const std::string& name) {
  const PreparedProblem p = prepare_problem(std::string(ARCLP_DATA_DIR) + "/netlib/" + name + ".mps");
  REQUIRE(p.ok());
  return p.lp;
}

SolverConfig config(Algorithm a) {
  SolverConfig cfg;
  cfg.algorithm = a;
  return cfg;
}

StandardLP two_variable_lp() {
  // min x1 + 2 x2  s.t.  x1 + x2 = 1
  StandardLP lp;
  lp.name = "two";
  lp.A = SparseMatrix::from_dense(1, 2, Vec{1, 1});
  lp.b = {1};
  lp.c = {1, 2};
  lp.var_map.roles.assign(2, ColumnRole::Shifted);
  lp.var_map.rules = {{{{0, 1.0}}, 0.0}, {{{1, 1.0}}, 0.0}};
  return lp;
}

}  // namespace

TEST_CASE("alg1 initial point") {
  std::mt19937_64 rng(1);
  const auto r = oracle::random_lp(rng, 2, 3);
  const Iterate it = initial_point_alg1(r.lp);
  CHECK(it.x == Vec(3, 100.0));
  CHECK(it.s == Vec(3, 100.0));
  CHECK(it.lambda == Vec(2, 0.0));
  CHECK(duality_measure(it.x, it.s) == 10000.0);
  CHECK(in_neighborhood(it.x, it.s, 0.25));
  CHECK(in_neighborhood(it.x, it.s, 0.0));
}

TEST_CASE("Mehrotra initial point is strictly positive") {
  SUBCASE("A = I, b = c = e") {
    StandardLP lp;
    lp.A = SparseMatrix::from_dense(2, 2, Vec{1, 0, 0, 1});
    lp.b = {1, 1};
    lp.c = {1, 1};
    const Iterate it = initial_point_mehrotra(lp);
    for (double v : it.x) CHECK(v > 0.0);
    for (double v : it.s) CHECK(v > 0.0);
  }
  SUBCASE("random LPs") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto r = oracle::random_lp(rng, 5, 12);
      const Iterate it = initial_point_mehrotra(r.lp);
      for (double v : it.x) CHECK(v > 1e-10);
      for (double v : it.s) CHECK(v > 1e-10);
      CHECK(it.lambda.size() == 5);
    }
  }
}

TEST_CASE("max_alpha_positivity examples") {
  CHECK(max_alpha_positivity(Vec{1, 2}, Vec{0, 0}, Vec{0, 0}) == kHalfPi);
  CHECK(max_alpha_positivity(Vec{1}, Vec{2}, Vec{0}) == doctest::Approx(M_PI / 6).epsilon(1e-12));
  CHECK(max_alpha_positivity(Vec{1}, Vec{0}, Vec{-3}) == doctest::Approx(std::acos(2.0 / 3.0)).epsilon(1e-12));
  CHECK(std::acos(2.0 / 3.0) == doctest::Approx(0.84107).epsilon(1e-5));
  // minimum over components
  CHECK(max_alpha_positivity(Vec{1, 1}, Vec{2, 0}, Vec{0, -3}) == doctest::Approx(M_PI / 6).epsilon(1e-12));
}

TEST_CASE("max_alpha_positivity is maximal and safe on random arcs") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 8;
    Vec base(n), d1(n), d2(n);
    for (auto& v : base) v = pos(rng);
    for (auto& v : d1) v = normal(rng);
    for (auto& v : d2) v = normal(rng);
    const double a = max_alpha_positivity(base, d1, d2);
    REQUIRE(a > 0.0);
    REQUIRE(a <= kHalfPi);
    for (double v : arc_point(base, d1, d2, a)) CHECK(v >= 0.0);
    // interior samples, up to rounding in the evaluation itself
    for (int k = 0; k < 50; ++k) {
      for (double v : arc_point(base, d1, d2, a * k / 50.0)) CHECK(v >= -1e-14);
    }
    if (a < kHalfPi) {
      const Vec beyond = arc_point(base, d1, d2, std::min(a + 1e-6, kHalfPi));
      CHECK(*std::min_element(beyond.begin(), beyond.end()) < 0.0);
    }
  }
}

TEST_CASE("max_linear_step") {
  CHECK(max_linear_step(Vec{1, 2}, Vec{2, -1}) == 0.5);
  CHECK(max_linear_step(Vec{1, 2}, Vec{-1, -1}) == 1.0);
  CHECK(max_linear_step(Vec{1}, Vec{0.25}, kInf) == 4.0);
}

TEST_CASE("convergence measure") {
  const StandardLP lp = two_variable_lp();
  SUBCASE("exact optimal pair") {
    // x = (1, 0), lambda = 1, s = (0, 1)
    CHECK(check_convergence(lp, Iterate{{1, 0}, {1}, {0, 1}}, 1e-7));
    CHECK(convergence_measure(lp, Iterate{{1, 0}, {1}, {0, 1}}) == 0.0);
  }
  SUBCASE("tiny residuals and mu") {
    StandardLP unit;
    unit.A = SparseMatrix::from_dense(1, 1, Vec{1});
    unit.b = {1};
    unit.c = {1};
    // rb = 1e-9, rc = 1e-9, mu = 1e-8
    const Iterate it{{1 + 1e-9}, {1 - 1e-8 + 1e-9}, {1e-8}};
    CHECK(check_convergence(unit, it, 1e-7));
  }
  SUBCASE("large primal residual") {
    StandardLP ten;
    ten.A = SparseMatrix::from_dense(1, 1, Vec{1});
    ten.b = {10};
    ten.c = {0};
    const Iterate it{{9}, {0}, {0}};
    CHECK(convergence_measure(ten, it) == doctest::Approx(0.1));
    CHECK_FALSE(check_convergence(ten, it, 1e-7));
  }
}

TEST_CASE("theoretical stop") {
  CHECK(check_theoretical_stop(1e-8, 0.0, 0.0, 1e-8, 0.0, 0.0, 1e-7));
  CHECK_FALSE(check_theoretical_stop(2e-7, 0.0, 0.0, 1.0, 0.0, 0.0, 1e-7));
  // residuals decayed proportionally with mu from (mu0, rb0, rc0) = (10, 5, 3)
  for (double ratio : {1e-3, 1e-7, 1.01e-8, 0.99e-8, 1e-9}) {
    const double mu = 10.0 * ratio;
    CHECK(check_theoretical_stop(mu, 5.0 * ratio, 3.0 * ratio, 10.0, 5.0, 3.0, 1e-7) == (mu <= 1e-7));
  }
}

TEST_CASE("config validation and names") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.effective_beta_formula() == BetaFormula::Simple);
  cfg.algorithm = Algorithm::Alg1;
  CHECK(cfg.effective_beta_formula() == BetaFormula::Full);
  cfg.theta = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.epsilon = 2.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  for (auto a : {Algorithm::Alg1, Algorithm::Alg2, Algorithm::Arc, Algorithm::Line}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK(parse_status("IterationLimit") == SolveStatus::IterationLimit);
  CHECK_FALSE(parse_algorithm("simplex"));
}

TEST_CASE("Netlib iteration counts within three of the reference table") {
  struct Row {
    const char* name;
    int alg2, arc, line;
  };
  for (const Row& row : {Row{"AFIRO", 7, 8, 9}, Row{"ADLITTLE", 10, 11, 13}, Row{"KB2", 24, 24, 24},
                         Row{"SC50B", 7, 7, 8}}) {
    CAPTURE(row.name);
    const StandardLP lp = netlib(row.name);
    const SolveResult a = solve(lp, config(Algorithm::Alg2));
    const SolveResult b = solve(lp, config(Algorithm::Arc));
    const SolveResult c = solve(lp, config(Algorithm::Line));
    CHECK(a.status == SolveStatus::Optimal);
    CHECK(b.status == SolveStatus::Optimal);
    CHECK(c.status == SolveStatus::Optimal);
    CHECK(std::abs(a.iterations - row.alg2) <= 3);
    CHECK(std::abs(b.iterations - row.arc) <= 3);
    CHECK(std::abs(c.iterations - row.line) <= 3);
  }
}

TEST_CASE("alg1 solves KB2 with beta = 0.5") {
  SolverConfig cfg = config(Algorithm::Alg1);
  cfg.beta = 0.5;
  const SolveResult r = solve(netlib("KB2"), cfg);
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.iterations < cfg.max_iter);
}

TEST_CASE("an already optimal start takes zero iterations") {
  std::mt19937_64 rng(3);
  auto r = oracle::random_lp(rng, 3, 6);
  for (auto& v : r.s) v = 1e-10;
  r.lp.c = r.lp.A.multiply_transpose(r.lambda);
  for (int j = 0; j < 6; ++j) r.lp.c[j] += r.s[j];
  for (auto a : {Algorithm::Alg1, Algorithm::Alg2, Algorithm::Arc, Algorithm::Line}) {
    const SolveResult res = solve_from(r.lp, config(a), Iterate{r.x, r.lambda, r.s});
    CHECK(res.status == SolveStatus::Optimal);
    CHECK(res.iterations == 0);
  }
}

TEST_CASE("alg1 keeps every iterate of a two-variable LP in the neighborhood") {
  const StandardLP lp = two_variable_lp();
  for (double beta : {0.1, 0.5, 0.9}) {
    SolverConfig cfg = config(Algorithm::Alg1);
    cfg.beta = beta;
    int calls = 0;
    const SolveResult r = solve(lp, cfg, [&](const IterationInfo& info) {
      ++calls;
      CHECK(in_neighborhood(info.after->x, info.after->s, cfg.theta));
    });
    CHECK(r.status == SolveStatus::Optimal);
    CHECK(calls == r.iterations);
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("every algorithm keeps strictly positive iterates") {
  const StandardLP lp = netlib("AFIRO");
  for (auto a : {Algorithm::Alg1, Algorithm::Alg2, Algorithm::Arc, Algorithm::Line}) {
    CAPTURE(to_string(a));
    std::vector<Iterate> seen;
    const SolveResult r = solve(lp, config(a), [&](const IterationInfo& info) { seen.push_back(*info.after); });
    REQUIRE(static_cast<int>(seen.size()) == r.iterations);
    for (std::size_t i = 0; i < seen.size(); ++i) {
      // the arc methods may finish on the unscaled candidate, which is only nonnegative
      const double lo = i + 1 == seen.size() ? 0.0 : std::numeric_limits<double>::min();
      for (double v : seen[i].x) CHECK(v >= lo);
      for (double v : seen[i].s) CHECK(v >= lo);
    }
  }
}

TEST_CASE("trace has one row per iteration") {
  SolverConfig cfg;
  cfg.trace = true;
  const SolveResult r = solve(netlib("AFIRO"), cfg);
  REQUIRE(r.status == SolveStatus::Optimal);
  REQUIRE(static_cast<int>(r.trace.size()) == r.iterations);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i].iteration == r.trace[i - 1].iteration + 1);
  for (const auto& t : r.trace) {
    CHECK(t.sigma >= cfg.sigma_min);
    CHECK(t.sigma <= cfg.sigma_max);
  }
  CHECK(r.trace.back().mu == doctest::Approx(r.mu));
}

TEST_CASE("iteration limit and random LP optimum") {
  std::mt19937_64 rng(6);
  const auto r = oracle::random_lp(rng, 4, 8);
  SolverConfig cfg;
  cfg.max_iter = 2;
  CHECK(solve(r.lp, cfg).status == SolveStatus::IterationLimit);
  const double want = *oracle::vertex_enumeration(r.lp);
  for (auto a : {Algorithm::Alg1, Algorithm::Alg2, Algorithm::Arc, Algorithm::Line}) {
    const SolveResult res = solve(r.lp, config(a));
    CHECK(res.status == SolveStatus::Optimal);
    CHECK(oracle::rel_diff(res.objective, want) < 1e-6);
  }
}

TEST_CASE("zero momentum reproduces the arc baseline") {
  SolverConfig a = config(Algorithm::Alg2);
  a.zero_momentum = true;
  a.trace = true;
  SolverConfig b = config(Algorithm::Arc);
  b.trace = true;
  const StandardLP lp = netlib("SC50A");
  const SolveResult ra = solve(lp, a);
  const SolveResult rb = solve(lp, b);
  REQUIRE(ra.iterations == rb.iterations);
  for (std::size_t i = 0; i < ra.trace.size(); ++i) CHECK(ra.trace[i].mu == rb.trace[i].mu);
}
