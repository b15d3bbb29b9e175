#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "arclp/presolve.hpp"
#include "arclp/solver.hpp"

namespace arclp {

struct BenchmarkRecord {
  std::string problem;
  int n = 0;
  int m = 0;
  Algorithm algorithm = Algorithm::Alg2;
  double beta = 0.0;
  BetaFormula beta_formula = BetaFormula::Simple;
  SolveStatus status = SolveStatus::NumericalError;
  int iterations = 0;
  double time_seconds = 0.0;
  double mu = 0.0;
  double rb_norm = 0.0;
  double rc_norm = 0.0;
  double objective = 0.0;
  std::string note;  // not part of the CSV

  bool solved() const { return status == SolveStatus::Optimal; }
};

/// A problem after parse, standardization and presolve.
struct PreparedProblem {
  std::string name;
  StandardLP lp;
  PresolveReport presolve;
  std::string error;  // set when the file could not be turned into an LP

  bool ok() const { return error.empty() && presolve.verdict == PresolveVerdict::Reduced; }
};

/// Never throws; failures land in `error` or in the presolve verdict.
PreparedProblem prepare_problem(const std::filesystem::path& mps_file);

/// Runs one configuration on a prepared problem.
BenchmarkRecord run_one(const PreparedProblem& p, const SolverConfig& cfg);

struct BenchmarkOptions {
  double time_limit = 0.0;  // per solve, seconds; 0 = none
  int jobs = 1;
};

/// *.mps files of a directory in name order. Throws std::runtime_error when the
/// directory is missing.
std::vector<std::filesystem::path> list_problems(const std::filesystem::path& dir);

/// Every (problem, config) pair; records are ordered by problem name, then config order.
std::vector<BenchmarkRecord> run_benchmark(const std::vector<std::filesystem::path>& files,
                                           const std::vector<SolverConfig>& configs,
                                           const BenchmarkOptions& opts = {});
std::vector<BenchmarkRecord> run_benchmark(const std::filesystem::path& dir, const std::vector<SolverConfig>& configs,
                                           const BenchmarkOptions& opts = {});

inline constexpr const char* kCsvHeader =
    "problem,n,m,algorithm,beta,beta_formula,status,iterations,time_seconds,mu,rb_norm,rc_norm,objective";

void write_csv(std::ostream& os, const std::vector<BenchmarkRecord>& records);
/// Throws std::runtime_error on a malformed header or row.
std::vector<BenchmarkRecord> read_csv(std::istream& is);

/// Profile label of a record: the algorithm name, extended with beta and the
/// weight formula when one algorithm appears with several settings in `all`.
std::string solver_key(const BenchmarkRecord& r, const std::vector<BenchmarkRecord>& all);

enum class ProfileMetric { Iterations, Time };

struct ProfileCurve {
  std::string solver;
  std::vector<double> tau;       // increasing finite ratios observed for this solver
  std::vector<double> fraction;  // share of problems with ratio <= tau

  double fraction_at(double t) const;
};

/// Ratio of each solver's metric to the best one per problem; unsolved runs
/// count as an infinite ratio. Times are floored at 1e-6 s and iteration
/// counts at 1 before dividing. Throws std::invalid_argument on empty input
/// or when solvers cover different problem sets.
std::vector<ProfileCurve> performance_profile(const std::vector<BenchmarkRecord>& records, ProfileMetric metric);

void write_profile_csv(std::ostream& os, const std::vector<ProfileCurve>& curves);

struct AverageTime {
  std::string solver;
  double mean_seconds = 0.0;
};

struct AverageTimeReport {
  std::vector<std::string> problems;  // problems on which every solver took >= threshold
  std::vector<AverageTime> per_solver;

  bool empty() const { return problems.empty(); }
  std::string to_text() const;
};

AverageTimeReport average_time_report(const std::vector<BenchmarkRecord>& records, double threshold_seconds);

}  // namespace arclp
