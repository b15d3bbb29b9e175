#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "arclp/iterate.hpp"

namespace arclp {

enum class Algorithm {
  Alg1,  // neighborhood-confined arc search with guarded restarts
  Alg2,  // Mehrotra-type arc search with restarts
  Arc,   // Mehrotra-type arc search, no momentum
  Line,  // Mehrotra predictor-corrector line search
};

enum class BetaFormula { Full, Simple };

enum class SolveStatus { Optimal, IterationLimit, StepTooSmall, NumericalError, Infeasible, Unbounded };

const char* to_string(Algorithm a);
const char* to_string(BetaFormula f);
const char* to_string(SolveStatus s);
std::optional<Algorithm> parse_algorithm(std::string_view s);
std::optional<BetaFormula> parse_beta_formula(std::string_view s);
std::optional<SolveStatus> parse_status(std::string_view s);

struct SolverConfig {
  Algorithm algorithm = Algorithm::Alg2;
  double beta = 0.9;
  /// Unset means Full for Alg1 and Simple for Alg2.
  std::optional<BetaFormula> beta_formula;
  double theta = 0.25;
  double epsilon = 1e-7;
  int max_iter = 100;
  double step_floor = 1e-7;
  double gamma = 0.9;
  double sigma_min = 1e-6;
  double sigma_max = 0.5;
  /// Alg1 corrector target: (1 - sin a) mu_z instead of (1 - sin a) mu.
  bool corrector_uses_mu_z = false;
  /// Stop on mu <= eps with residuals scaled by their initial values instead of
  /// the relative criterion.
  bool theoretical_stop = false;
  /// Alg2 only: drop the momentum term (delta = 0) while keeping everything else.
  bool zero_momentum = false;
  /// Wall-clock limit in seconds; 0 disables it. Exceeding it reports IterationLimit.
  double time_limit = 0.0;
  KernelMode kernel = KernelMode::Auto;
  bool trace = false;

  BetaFormula effective_beta_formula() const;
  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

struct TraceRow {
  int iteration = 0;
  double mu = 0.0;
  double sin_alpha = 0.0;  // primal step; equals the dual one for Alg1
  double sin_alpha_dual = 0.0;
  double beta_k = 0.0;
  double sigma = 0.0;
  double rb_norm = 0.0;
  double rc_norm = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::NumericalError;
  int iterations = 0;
  double wall_time = 0.0;
  double mu = 0.0;
  double rb_norm = 0.0;
  double rc_norm = 0.0;
  double objective = 0.0;  // original space, includes objective_shift
  Iterate point;
  std::vector<TraceRow> trace;
  std::string message;
};

/// Handed to the observer after every completed iteration.
struct IterationInfo {
  int k = 0;
  const Iterate* before = nullptr;
  const Iterate* after = nullptr;
  const Vec* z = nullptr;       // restarted primal point used for the derivatives
  bool momentum = false;        // z differs from x
  double beta_k = 0.0;
  double alpha_primal = 0.0;    // angle for arc methods, step length for Line
  double alpha_dual = 0.0;
  double mu = 0.0;
  double mu_z = 0.0;
  double sigma = 0.0;
};

using IterationObserver = std::function<void(const IterationInfo&)>;

/// max(||rb||/max(1,||b||), ||rc||/max(1,||c||), mu/max(1,|c^T x|,|b^T lambda|))
double convergence_measure(const StandardLP& lp, const Iterate& it);
bool check_convergence(const StandardLP& lp, const Iterate& it, double epsilon);

/// mu <= eps, ||rb|| <= eps ||rb0||/mu0 and ||rc|| <= eps ||rc0||/mu0.
bool check_theoretical_stop(double mu, double rb_norm, double rc_norm, double mu0, double rb0_norm, double rc0_norm,
                            double epsilon);

SolveResult solve_alg1(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs = {});
SolveResult solve_alg2(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs = {});
SolveResult solve_arc_baseline(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs = {});
SolveResult solve_line_baseline(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs = {});

/// Dispatches on cfg.algorithm.
SolveResult solve(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs = {});

/// Same, from a given starting point instead of the algorithm's default one.
SolveResult solve_from(const StandardLP& lp, const SolverConfig& cfg, Iterate start,
                       const IterationObserver& obs = {});

}  // namespace arclp
