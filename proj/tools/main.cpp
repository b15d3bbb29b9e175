#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "arclp/harness.hpp"

namespace fs = std::filesystem;
using namespace arclp;

namespace {

enum Exit { kOk = 0, kUsage = 1, kImmature = 2, kNumerical = 3, kVerdict = 4 };

int exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return kOk;
    case SolveStatus::IterationLimit:
    case SolveStatus::StepTooSmall: return kImmature;
    case SolveStatus::NumericalError: return kNumerical;
    case SolveStatus::Infeasible:
    case SolveStatus::Unbounded: return kVerdict;
  }
  return kNumerical;
}

struct SolverFlags {
  std::string algorithm = "alg2";
  std::vector<std::string> algorithms{"alg2", "arc", "line"};
  double beta = 0.9;
  std::string beta_formula;  // empty: algorithm default
  double theta = 0.25;
  double epsilon = 1e-7;
  int max_iter = 100;
  double gamma = 0.9;

  void add_common(CLI::App* app) {
    app->add_option("--beta", beta, "restart parameter")->capture_default_str();
    app->add_option("--beta-formula", beta_formula, "momentum weight formula")
        ->check(CLI::IsMember({"full", "simple"}));
    app->add_option("--theta", theta, "neighborhood parameter (alg1)")->capture_default_str();
    app->add_option("--epsilon", epsilon, "stopping threshold")->capture_default_str();
    app->add_option("--max-iter", max_iter, "iteration limit")->capture_default_str();
    app->add_option("--gamma", gamma, "step scaling factor")->capture_default_str();
  }

  SolverConfig config(const std::string& alg) const {
    SolverConfig cfg;
    cfg.algorithm = *parse_algorithm(alg);
    cfg.beta = beta;
    if (!beta_formula.empty()) cfg.beta_formula = parse_beta_formula(beta_formula);
    cfg.theta = theta;
    cfg.epsilon = epsilon;
    cfg.max_iter = max_iter;
    cfg.gamma = gamma;
    return cfg;
  }
};

const auto kAlgorithms = CLI::IsMember({"alg1", "alg2", "arc", "line"});

nlohmann::json to_json(const BenchmarkRecord& r) {
  return {{"problem", r.problem},
          {"n", r.n},
          {"m", r.m},
          {"algorithm", to_string(r.algorithm)},
          {"beta", r.beta},
          {"beta_formula", to_string(r.beta_formula)},
          {"status", to_string(r.status)},
          {"iterations", r.iterations},
          {"time_seconds", r.time_seconds},
          {"mu", r.mu},
          {"rb_norm", r.rb_norm},
          {"rc_norm", r.rc_norm},
          {"objective", r.objective},
          {"note", r.note}};
}

void write_trace(const std::string& path, const std::vector<TraceRow>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "iteration,mu,sin_alpha_primal,sin_alpha_dual,beta_k,sigma,rb_norm,rc_norm\n";
  for (const auto& t : trace) {
    out << t.iteration << ',' << t.mu << ',' << t.sin_alpha << ',' << t.sin_alpha_dual << ',' << t.beta_k << ','
        << t.sigma << ',' << t.rb_norm << ',' << t.rc_norm << "\n";
  }
}

int cmd_solve(const std::string& path, const SolverFlags& flags, const std::string& trace_path, bool json) {
  if (!fs::is_regular_file(path)) {
    std::cerr << "error: cannot open " << path << "\n";
    return kUsage;
  }
  const PreparedProblem p = prepare_problem(path);
  SolverConfig cfg = flags.config(flags.algorithm);
  cfg.trace = !trace_path.empty();

  BenchmarkRecord r;
  r.problem = p.name;
  r.algorithm = cfg.algorithm;
  r.beta = cfg.beta;
  r.beta_formula = cfg.effective_beta_formula();
  if (!p.ok()) {
    r = run_one(p, cfg);
    if (json) {
      std::cout << to_json(r).dump(2) << "\n";
    } else {
      std::cerr << (p.error.empty() ? p.presolve.to_text() : "error: " + p.error + "\n");
    }
    return kVerdict;
  }
  const SolveResult res = solve(p.lp, cfg);
  r.n = p.lp.cols();
  r.m = p.lp.rows();
  r.status = res.status;
  r.iterations = res.iterations;
  r.time_seconds = res.wall_time;
  r.mu = res.mu;
  r.rb_norm = res.rb_norm;
  r.rc_norm = res.rc_norm;
  r.objective = res.objective;
  r.note = res.message;
  if (cfg.trace) write_trace(trace_path, res.trace);

  if (json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout.precision(10);
    std::cout << "problem     " << r.problem << " (n=" << r.n << ", m=" << r.m << ")\n"
              << "algorithm   " << to_string(r.algorithm) << " (beta=" << r.beta << ", "
              << to_string(r.beta_formula) << ")\n"
              << "status      " << to_string(r.status) << (r.note.empty() ? "" : " (" + r.note + ")") << "\n"
              << "iterations  " << r.iterations << "\n"
              << "objective   " << r.objective << "\n"
              << "mu          " << r.mu << "\n"
              << "||r_b||     " << r.rb_norm << "\n"
              << "||r_c||     " << r.rc_norm << "\n"
              << "time        " << r.time_seconds << " s\n";
  }
  return exit_code(r.status);
}

int cmd_bench(const std::string& dir, const SolverFlags& flags, int jobs, double time_limit, const std::string& out) {
  std::vector<fs::path> files;
  try {
    files = list_problems(dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (files.empty()) {
    std::cerr << "error: no .mps files in " << dir << "\n";
    return kUsage;
  }
  std::vector<SolverConfig> configs;
  for (const auto& a : flags.algorithms) configs.push_back(flags.config(a));
  const auto records = run_benchmark(files, configs, {time_limit, jobs});
  if (out.empty()) {
    write_csv(std::cout, records);
  } else {
    std::ofstream os(out);
    if (!os) {
      std::cerr << "error: cannot write " << out << "\n";
      return kUsage;
    }
    write_csv(os, records);
  }
  return kOk;
}

int cmd_profile(const std::string& csv, const std::string& metric, const std::string& out) {
  std::ifstream is(csv);
  if (!is) {
    std::cerr << "error: cannot open " << csv << "\n";
    return kUsage;
  }
  std::vector<ProfileCurve> curves;
  try {
    curves = performance_profile(read_csv(is), metric == "time" ? ProfileMetric::Time : ProfileMetric::Iterations);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (out.empty()) {
    write_profile_csv(std::cout, curves);
  } else {
    std::ofstream os(out);
    if (!os) {
      std::cerr << "error: cannot write " << out << "\n";
      return kUsage;
    }
    write_profile_csv(os, curves);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arc-search interior-point LP solver"};
  app.require_subcommand(1);

  SolverFlags solve_flags;
  std::string solve_path;
  std::string trace_path;
  bool json = false;
  auto* solve = app.add_subcommand("solve", "solve one MPS problem");
  solve->add_option("path", solve_path, "MPS file")->required();
  solve->add_option("--algorithm", solve_flags.algorithm, "solver")->check(kAlgorithms)->capture_default_str();
  solve_flags.add_common(solve);
  solve->add_option("--trace", trace_path, "write per-iteration CSV to this path");
  solve->add_flag("--json", json, "print the result as one JSON object");

  SolverFlags bench_flags;
  std::string bench_dir;
  std::string bench_out;
  int jobs = 1;
  double time_limit = 0.0;
  auto* bench = app.add_subcommand("bench", "run every .mps file of a directory");
  bench->add_option("dir", bench_dir, "problem directory")->required();
  bench->add_option("--algorithm", bench_flags.algorithms, "solvers to run")->check(kAlgorithms)->capture_default_str();
  bench_flags.add_common(bench);
  bench->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--time-limit", time_limit, "seconds per solve, 0 for none")->capture_default_str();
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");

  std::string profile_csv;
  std::string metric = "iterations";
  std::string profile_out;
  auto* profile = app.add_subcommand("profile", "performance profile of a bench CSV");
  profile->add_option("csv", profile_csv, "bench CSV")->required();
  profile->add_option("--metric", metric, "ratio metric")
      ->check(CLI::IsMember({"iterations", "time"}))
      ->capture_default_str();
  profile->add_option("--out", profile_out, "CSV output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) {
      solve_flags.config(solve_flags.algorithm).validate();
      return cmd_solve(solve_path, solve_flags, trace_path, json);
    }
    if (*bench) {
      for (const auto& a : bench_flags.algorithms) bench_flags.config(a).validate();
      return cmd_bench(bench_dir, bench_flags, jobs, time_limit, bench_out);
    }
    return cmd_profile(profile_csv, metric, profile_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}
