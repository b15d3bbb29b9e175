#include "arclp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "arclp/error.hpp"
#include "arclp/initial_point.hpp"
#include "arclp/step.hpp"

namespace arclp {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Alg2: return "alg2";
    case Algorithm::Arc: return "arc";
    case Algorithm::Line: return "line";
  }
  return "?";
}

const char* to_string(BetaFormula f) { return f == BetaFormula::Full ? "full" : "simple"; }

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::IterationLimit: return "IterationLimit";
    case SolveStatus::StepTooSmall: return "StepTooSmall";
    case SolveStatus::NumericalError: return "NumericalError";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (auto a : {Algorithm::Alg1, Algorithm::Alg2, Algorithm::Arc, Algorithm::Line}) {
    if (s == to_string(a)) return a;
  }
  return std::nullopt;
}

std::optional<BetaFormula> parse_beta_formula(std::string_view s) {
  if (s == "full") return BetaFormula::Full;
  if (s == "simple") return BetaFormula::Simple;
  return std::nullopt;
}

std::optional<SolveStatus> parse_status(std::string_view s) {
  for (auto v : {SolveStatus::Optimal, SolveStatus::IterationLimit, SolveStatus::StepTooSmall,
                 SolveStatus::NumericalError, SolveStatus::Infeasible, SolveStatus::Unbounded}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

BetaFormula SolverConfig::effective_beta_formula() const {
  if (beta_formula) return *beta_formula;
  return algorithm == Algorithm::Alg1 ? BetaFormula::Full : BetaFormula::Simple;
}

void SolverConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
  require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in (0, 1)");
  require(max_iter >= 0, "max_iter must be nonnegative");
  require(step_floor >= 0.0, "step_floor must be nonnegative");
  require(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
  require(sigma_min > 0.0 && sigma_min <= sigma_max && sigma_max <= 1.0, "sigma bounds must satisfy 0 < min <= max <= 1");
  require(time_limit >= 0.0, "time_limit must be nonnegative");
  if (algorithm == Algorithm::Alg1) {
    require(theta > 0.0 && theta < 1.0 / (2.0 + std::sqrt(2.0)), "theta must lie in (0, 1/(2+sqrt 2))");
  }
}

double convergence_measure(const StandardLP& lp, const Iterate& it) {
  const Residuals r = residuals(lp, it);
  const double mu = duality_measure(it.x, it.s);
  const double primal = norm2(r.rb) / std::max(1.0, norm2(lp.b));
  const double dual = norm2(r.rc) / std::max(1.0, norm2(lp.c));
  const double gap = mu / std::max({1.0, std::abs(dot(lp.c, it.x)), std::abs(dot(lp.b, it.lambda))});
  return std::max({primal, dual, gap});
}

bool check_convergence(const StandardLP& lp, const Iterate& it, double epsilon) {
  return convergence_measure(lp, it) < epsilon;
}

bool check_theoretical_stop(double mu, double rb_norm, double rc_norm, double mu0, double rb0_norm, double rc0_norm,
                            double epsilon) {
  return mu <= epsilon && rb_norm <= rb0_norm / mu0 * epsilon && rc_norm <= rc0_norm / mu0 * epsilon;
}

namespace {

using Clock = std::chrono::steady_clock;

bool positive(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double t) { return t > 0.0; });
}

bool nonnegative(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double t) { return t >= 0.0; });
}

Vec hadamard(std::span<const double> a, std::span<const double> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double clamp_sigma(double mu_a, double mu, const SolverConfig& cfg) {
  const double ratio = mu_a / mu;
  double sigma = ratio * ratio * ratio;
  if (!std::isfinite(sigma)) sigma = cfg.sigma_max;
  return std::clamp(sigma, cfg.sigma_min, cfg.sigma_max);
}

/// State shared by all drivers: timing, stopping rules, trace and result assembly.
class Run {
 public:
  Run(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs)
      : lp(lp), cfg(cfg), obs(obs), kernel(lp.A, cfg.kernel), start_(Clock::now()) {
    cfg.validate();
  }

  void set_start(const Iterate& it) {
    mu0_ = duality_measure(it.x, it.s);
    const Residuals r = residuals(lp, it);
    rb0_ = norm2(r.rb);
    rc0_ = norm2(r.rc);
  }

  bool converged(const Iterate& it) const {
    if (!cfg.theoretical_stop) return check_convergence(lp, it, cfg.epsilon);
    const Residuals r = residuals(lp, it);
    return check_theoretical_stop(duality_measure(it.x, it.s), norm2(r.rb), norm2(r.rc), mu0_, rb0_, rc0_,
                                  cfg.epsilon);
  }

  bool out_of_time() const { return cfg.time_limit > 0.0 && elapsed() > cfg.time_limit; }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  void record(const IterationInfo& info) {
    if (cfg.trace) {
      const Residuals r = residuals(lp, *info.after);
      TraceRow row;
      row.iteration = info.k + 1;
      row.mu = duality_measure(info.after->x, info.after->s);
      const bool arc = cfg.algorithm != Algorithm::Line;
      row.sin_alpha = arc ? std::sin(info.alpha_primal) : info.alpha_primal;
      row.sin_alpha_dual = arc ? std::sin(info.alpha_dual) : info.alpha_dual;
      row.beta_k = info.beta_k;
      row.sigma = info.sigma;
      row.rb_norm = norm2(r.rb);
      row.rc_norm = norm2(r.rc);
      trace_.push_back(row);
    }
    if (obs) obs(info);
  }

  SolveResult finish(SolveStatus status, Iterate it, int iterations, std::string message = {}) {
    SolveResult out;
    out.status = status;
    out.iterations = iterations;
    if (!it.x.empty()) {  // empty when the starting point could not be built
      const Residuals r = residuals(lp, it);
      out.mu = duality_measure(it.x, it.s);
      out.rb_norm = norm2(r.rb);
      out.rc_norm = norm2(r.rc);
      out.objective = dot(lp.c, it.x) + lp.objective_shift;
    }
    out.point = std::move(it);
    out.trace = std::move(trace_);
    out.message = std::move(message);
    out.wall_time = elapsed();
    return out;
  }

  /// Common loop head: returns a status when the run must stop before iteration k.
  std::optional<std::pair<SolveStatus, std::string>> stop_before(const Iterate& it, int k) {
    last_ = it;
    last_k_ = k;
    if (converged(it)) return std::pair{SolveStatus::Optimal, std::string{}};
    if (k >= cfg.max_iter) return std::pair{SolveStatus::IterationLimit, std::string{"iteration limit reached"}};
    if (out_of_time()) return std::pair{SolveStatus::IterationLimit, std::string{"time limit reached"}};
    return std::nullopt;
  }

  const StandardLP& lp;
  const SolverConfig& cfg;
  const IterationObserver& obs;
  NewtonKernel kernel;
  Iterate last_;  // iterate at the head of the current iteration
  int last_k_ = 0;

 private:
  Clock::time_point start_;
  double mu0_ = 1.0;
  double rb0_ = 0.0;
  double rc0_ = 0.0;
  std::vector<TraceRow> trace_;
};

/// Restart weight and point for iteration k; z = x when there is no usable momentum.
struct Restart {
  Vec z;
  double beta_k = 0.0;
  bool momentum = false;
};

Restart make_restart(const Run& run, const Iterate& cur, const Vec* x_prev, const Vec* rb_prev, RestartMode mode) {
  Restart r{cur.x, 0.0, false};
  if (x_prev == nullptr) return r;
  const SolverConfig& cfg = run.cfg;
  const Vec& prev = cfg.zero_momentum ? cur.x : *x_prev;
  MomentumWeight w;
  if (cfg.effective_beta_formula() == BetaFormula::Full) {
    const Vec rb = primal_residual(run.lp, cur.x);
    const Vec rbp = cfg.zero_momentum ? rb : *rb_prev;
    w = momentum_weight_full(cur.x, prev, rb, rbp, cfg.beta);
  } else {
    w = momentum_weight_simple(cur.x, prev, cfg.beta);
  }
  if (w.vacuous) return r;
  Vec delta(cur.x.size());
  for (std::size_t i = 0; i < delta.size(); ++i) delta[i] = cur.x[i] - prev[i];
  r.z = restart_point(cur.x, w.beta_k, delta, mode, cur.s, cfg.theta);
  r.beta_k = w.beta_k;
  r.momentum = r.z != cur.x;
  return r;
}

SolveResult run_alg1(Run& run, Iterate cur) {
  const StandardLP& lp = run.lp;
  const SolverConfig& cfg = run.cfg;
  const std::size_t n = cur.x.size();
  run.set_start(cur);
  Vec x_prev;
  Vec rb_prev;
  for (int k = 0;; ++k) {
    if (auto stop = run.stop_before(cur, k)) return run.finish(stop->first, std::move(cur), k, stop->second);
    const bool has_prev = k > 0;
    const Restart rs = make_restart(run, cur, has_prev ? &x_prev : nullptr, has_prev ? &rb_prev : nullptr,
                                    RestartMode::Guarded);
    const Vec& z = rs.z;
    const double mu = duality_measure(cur.x, cur.s);
    const double mu_z = duality_measure(z, cur.s);
    const NewtonFactor f = run.kernel.factor(z, cur.s);
    const BlockSolution d1 = first_derivatives(lp, f, z, cur.lambda, cur.s);
    const BlockSolution d2 = second_derivatives(f, d1, 0.0, mu_z);

    auto step_ok = [&](double a) {
      const Vec xa = arc_point(z, d1.dx, d2.dx, a);
      const Vec sa = arc_point(cur.s, d1.ds, d2.ds, a);
      if (!positive(xa) || !positive(sa)) return false;
      const double target = (1.0 - std::sin(a)) * mu_z;
      Vec dev = hadamard(xa, sa);
      for (double& t : dev) t -= target;
      return norm2(dev) <= 2.0 * cfg.theta * target;
    };

    const Vec zero_m(lp.rows(), 0.0);
    const Vec zero_n(n, 0.0);
    std::optional<Iterate> next;
    double alpha = kHalfPi;
    for (; alpha >= cfg.step_floor; alpha *= 0.8) {
      if (!step_ok(alpha) || !step_ok(0.5 * alpha) || !step_ok(0.25 * alpha)) continue;
      Iterate trial{arc_point(z, d1.dx, d2.dx, alpha), arc_point(cur.lambda, d1.dlambda, d2.dlambda, alpha),
                    arc_point(cur.s, d1.ds, d2.ds, alpha)};
      const double target = (1.0 - std::sin(alpha)) * (cfg.corrector_uses_mu_z ? mu_z : mu);
      Vec r3 = hadamard(trial.x, trial.s);
      for (double& t : r3) t = target - t;
      const NewtonFactor fc = run.kernel.factor(trial.x, trial.s);
      const BlockSolution corr = solve_block(fc, zero_m, zero_n, r3);
      for (std::size_t i = 0; i < n; ++i) {
        trial.x[i] += corr.dx[i];
        trial.s[i] += corr.ds[i];
      }
      for (int i = 0; i < lp.rows(); ++i) trial.lambda[i] += corr.dlambda[i];
      // The sampled step test does not certify the whole interval; keep
      // backtracking until the corrected point is back in the neighborhood.
      if (in_neighborhood(trial.x, trial.s, cfg.theta)) {
        next = std::move(trial);
        break;
      }
    }
    if (!next) return run.finish(SolveStatus::StepTooSmall, std::move(cur), k, "no admissible step above the floor");

    IterationInfo info;
    info.k = k;
    info.before = &cur;
    info.after = &*next;
    info.z = &z;
    info.momentum = rs.momentum;
    info.beta_k = rs.beta_k;
    info.alpha_primal = info.alpha_dual = alpha;
    info.mu = mu;
    info.mu_z = mu_z;
    run.record(info);

    rb_prev = primal_residual(lp, cur.x);
    x_prev = std::move(cur.x);
    cur = std::move(*next);
  }
}

SolveResult run_mehrotra_arc(Run& run, Iterate cur, bool momentum) {
  const StandardLP& lp = run.lp;
  const SolverConfig& cfg = run.cfg;
  const std::size_t n = cur.x.size();
  run.set_start(cur);
  Vec x_prev;
  Vec rb_prev;
  for (int k = 0;; ++k) {
    if (auto stop = run.stop_before(cur, k)) return run.finish(stop->first, std::move(cur), k, stop->second);
    const bool has_prev = momentum && k > 0;
    const Restart rs = make_restart(run, cur, has_prev ? &x_prev : nullptr, has_prev ? &rb_prev : nullptr,
                                    RestartMode::Always);
    const Vec& z = rs.z;
    const double mu_z = duality_measure(z, cur.s);
    const NewtonFactor f = run.kernel.factor(z, cur.s);
    const BlockSolution d1 = first_derivatives(lp, f, z, cur.lambda, cur.s);

    const double aff_z = max_linear_step(z, d1.dx);
    const double aff_s = max_linear_step(cur.s, d1.ds);
    double mu_a = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu_a += (z[i] - aff_z * d1.dx[i]) * (cur.s[i] - aff_s * d1.ds[i]);
    mu_a /= static_cast<double>(n);
    const double sigma = clamp_sigma(mu_a, mu_z, cfg);

    const BlockSolution d2 = second_derivatives(f, d1, sigma, mu_z);
    const double amax_z = max_alpha_positivity(z, d1.dx, d2.dx);
    const double amax_s = max_alpha_positivity(cur.s, d1.ds, d2.ds);

    IterationInfo info;
    info.k = k;
    info.before = &cur;
    info.z = &z;
    info.momentum = rs.momentum;
    info.beta_k = rs.beta_k;
    info.mu = duality_measure(cur.x, cur.s);
    info.mu_z = mu_z;
    info.sigma = sigma;

    Iterate cand{arc_point(z, d1.dx, d2.dx, amax_z), arc_point(cur.lambda, d1.dlambda, d2.dlambda, amax_s),
                 arc_point(cur.s, d1.ds, d2.ds, amax_s)};
    if (nonnegative(cand.x) && nonnegative(cand.s) && run.converged(cand)) {
      info.after = &cand;
      info.alpha_primal = amax_z;
      info.alpha_dual = amax_s;
      run.record(info);
      return run.finish(SolveStatus::Optimal, std::move(cand), k + 1);
    }

    const double a_z = cfg.gamma * amax_z;
    const double a_s = cfg.gamma * amax_s;
    if (std::min(a_z, a_s) < cfg.step_floor) {
      return run.finish(SolveStatus::StepTooSmall, std::move(cur), k, "step angle below the floor");
    }
    Iterate next{arc_point(z, d1.dx, d2.dx, a_z), arc_point(cur.lambda, d1.dlambda, d2.dlambda, a_s),
                 arc_point(cur.s, d1.ds, d2.ds, a_s)};
    if (!positive(next.x) || !positive(next.s)) {
      return run.finish(SolveStatus::StepTooSmall, std::move(cur), k, "scaled step left the positive orthant");
    }

    info.after = &next;
    info.alpha_primal = a_z;
    info.alpha_dual = a_s;
    run.record(info);

    if (momentum && cfg.effective_beta_formula() == BetaFormula::Full) rb_prev = primal_residual(lp, cur.x);
    x_prev = std::move(cur.x);
    cur = std::move(next);
  }
}

SolveResult run_line(Run& run, Iterate cur) {
  const StandardLP& lp = run.lp;
  const SolverConfig& cfg = run.cfg;
  const std::size_t n = cur.x.size();
  constexpr double kUnbounded = std::numeric_limits<double>::infinity();
  run.set_start(cur);
  for (int k = 0;; ++k) {
    if (auto stop = run.stop_before(cur, k)) return run.finish(stop->first, std::move(cur), k, stop->second);
    const double mu = duality_measure(cur.x, cur.s);
    const Residuals r = residuals(lp, cur);
    const NewtonFactor f = run.kernel.factor(cur.x, cur.s);
    const BlockSolution aff = solve_block(f, r.rb, r.rc, hadamard(cur.x, cur.s));

    const double aff_p = max_linear_step(cur.x, aff.dx);
    const double aff_d = max_linear_step(cur.s, aff.ds);
    double mu_a = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu_a += (cur.x[i] - aff_p * aff.dx[i]) * (cur.s[i] - aff_d * aff.ds[i]);
    mu_a /= static_cast<double>(n);
    const double sigma = clamp_sigma(mu_a, mu, cfg);

    Vec r3(n);
    for (std::size_t i = 0; i < n; ++i) r3[i] = cur.x[i] * cur.s[i] + aff.dx[i] * aff.ds[i] - sigma * mu;
    const BlockSolution d = solve_block(f, r.rb, r.rc, r3);

    const double a_p = std::min(1.0, cfg.gamma * max_linear_step(cur.x, d.dx, kUnbounded));
    const double a_d = std::min(1.0, cfg.gamma * max_linear_step(cur.s, d.ds, kUnbounded));
    if (std::min(a_p, a_d) < cfg.step_floor) {
      return run.finish(SolveStatus::StepTooSmall, std::move(cur), k, "step length below the floor");
    }
    Iterate next = cur;
    for (std::size_t i = 0; i < n; ++i) {
      next.x[i] -= a_p * d.dx[i];
      next.s[i] -= a_d * d.ds[i];
    }
    for (int i = 0; i < lp.rows(); ++i) next.lambda[i] -= a_d * d.dlambda[i];
    if (!positive(next.x) || !positive(next.s)) {
      return run.finish(SolveStatus::StepTooSmall, std::move(cur), k, "step left the positive orthant");
    }

    IterationInfo info;
    info.k = k;
    info.before = &cur;
    info.after = &next;
    info.z = &cur.x;
    info.alpha_primal = a_p;
    info.alpha_dual = a_d;
    info.mu = mu;
    info.mu_z = mu;
    info.sigma = sigma;
    run.record(info);
    cur = std::move(next);
  }
}

SolveResult dispatch(const StandardLP& lp, const SolverConfig& cfg, std::optional<Iterate> start,
                     const IterationObserver& obs) {
  Run run(lp, cfg, obs);
  try {
    switch (cfg.algorithm) {
      case Algorithm::Alg1:
        return run_alg1(run, start ? std::move(*start) : initial_point_alg1(lp));
      case Algorithm::Alg2:
        return run_mehrotra_arc(run, start ? std::move(*start) : initial_point_mehrotra(lp, run.kernel), true);
      case Algorithm::Arc:
        return run_mehrotra_arc(run, start ? std::move(*start) : initial_point_mehrotra(lp, run.kernel), false);
      case Algorithm::Line:
        return run_line(run, start ? std::move(*start) : initial_point_mehrotra(lp, run.kernel));
    }
  } catch (const NumericalError& e) {
    return run.finish(SolveStatus::NumericalError, std::move(run.last_), run.last_k_, e.what());
  } catch (const std::invalid_argument& e) {
    // factor() rejects non-positive scalings, which only arise from round-off here
    return run.finish(SolveStatus::NumericalError, std::move(run.last_), run.last_k_, e.what());
  }
  throw std::invalid_argument("unknown algorithm");
}

SolverConfig with_algorithm(SolverConfig cfg, Algorithm a) {
  cfg.algorithm = a;
  return cfg;
}

}  // namespace

SolveResult solve(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs) {
  return dispatch(lp, cfg, std::nullopt, obs);
}

SolveResult solve_from(const StandardLP& lp, const SolverConfig& cfg, Iterate start, const IterationObserver& obs) {
  return dispatch(lp, cfg, std::move(start), obs);
}

SolveResult solve_alg1(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs) {
  return solve(lp, with_algorithm(cfg, Algorithm::Alg1), obs);
}

SolveResult solve_alg2(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs) {
  return solve(lp, with_algorithm(cfg, Algorithm::Alg2), obs);
}

SolveResult solve_arc_baseline(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs) {
  return solve(lp, with_algorithm(cfg, Algorithm::Arc), obs);
}

SolveResult solve_line_baseline(const StandardLP& lp, const SolverConfig& cfg, const IterationObserver& obs) {
  return solve(lp, with_algorithm(cfg, Algorithm::Line), obs);
}

}  // namespace arclp
