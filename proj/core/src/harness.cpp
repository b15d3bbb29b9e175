#include "arclp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "arclp/error.hpp"
#include "arclp/mps.hpp"

namespace arclp {

namespace fs = std::filesystem;

PreparedProblem prepare_problem(const fs::path& mps_file) {
  PreparedProblem p;
  p.name = mps_file.stem().string();
  try {
    const RawLP raw = read_mps_file(mps_file.string());
    PresolveResult pr = presolve(to_standard_form(raw));
    p.lp = std::move(pr.lp);
    p.presolve = std::move(pr.report);
  } catch (const std::exception& e) {
    p.error = e.what();
  }
  return p;
}

BenchmarkRecord run_one(const PreparedProblem& p, const SolverConfig& cfg) {
  BenchmarkRecord r;
  r.problem = p.name;
  r.algorithm = cfg.algorithm;
  r.beta = cfg.beta;
  r.beta_formula = cfg.effective_beta_formula();
  if (!p.error.empty()) {
    r.status = SolveStatus::NumericalError;
    r.note = p.error;
    return r;
  }
  r.n = p.presolve.cols_after;
  r.m = p.presolve.rows_after;
  if (p.presolve.verdict != PresolveVerdict::Reduced) {
    r.status = p.presolve.verdict == PresolveVerdict::Infeasible ? SolveStatus::Infeasible : SolveStatus::Unbounded;
    r.note = p.presolve.log.empty() ? "" : p.presolve.log.back();
    return r;
  }
  const SolveResult res = solve(p.lp, cfg);
  r.status = res.status;
  r.iterations = res.iterations;
  r.time_seconds = res.wall_time;
  r.mu = res.mu;
  r.rb_norm = res.rb_norm;
  r.rc_norm = res.rc_norm;
  r.objective = res.objective;
  r.note = res.message;
  return r;
}

std::vector<fs::path> list_problems(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::string ext = e.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".mps") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BenchmarkRecord> run_benchmark(const std::vector<fs::path>& files, const std::vector<SolverConfig>& configs,
                                           const BenchmarkOptions& opts) {
  std::vector<std::vector<BenchmarkRecord>> per_problem(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const PreparedProblem p = prepare_problem(files[i]);
      for (SolverConfig cfg : configs) {
        if (opts.time_limit > 0.0) cfg.time_limit = opts.time_limit;
        per_problem[i].push_back(run_one(p, cfg));
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(files.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  std::vector<std::size_t> order(files.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return files[a].stem().string() < files[b].stem().string();
  });
  std::vector<BenchmarkRecord> out;
  for (std::size_t i : order) {
    for (auto& r : per_problem[i]) out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchmarkRecord> run_benchmark(const fs::path& dir, const std::vector<SolverConfig>& configs,
                                           const BenchmarkOptions& opts) {
  return run_benchmark(list_problems(dir), configs, opts);
}

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec == std::errc{} && res.ptr == s.data() + s.size()) return v;
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + s + "'");
}

int to_int(const std::string& s, std::size_t line) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("csv line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<BenchmarkRecord>& records) {
  os << kCsvHeader << "\n";
  for (const auto& r : records) {
    os << r.problem << ',' << r.n << ',' << r.m << ',' << to_string(r.algorithm) << ',' << fmt(r.beta) << ','
       << to_string(r.beta_formula) << ',' << to_string(r.status) << ',' << r.iterations << ','
       << fmt(r.time_seconds) << ',' << fmt(r.mu) << ',' << fmt(r.rb_norm) << ',' << fmt(r.rc_norm) << ','
       << fmt(r.objective) << "\n";
  }
}

std::vector<BenchmarkRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("csv: unexpected header");
  std::vector<BenchmarkRecord> out;
  std::size_t no = 1;
  while (std::getline(is, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 13) throw std::runtime_error("csv line " + std::to_string(no) + ": expected 13 fields");
    BenchmarkRecord r;
    r.problem = f[0];
    r.n = to_int(f[1], no);
    r.m = to_int(f[2], no);
    const auto alg = parse_algorithm(f[3]);
    const auto formula = parse_beta_formula(f[5]);
    const auto status = parse_status(f[6]);
    if (!alg || !formula || !status) throw std::runtime_error("csv line " + std::to_string(no) + ": bad enum field");
    r.algorithm = *alg;
    r.beta = to_double(f[4], no);
    r.beta_formula = *formula;
    r.status = *status;
    r.iterations = to_int(f[7], no);
    r.time_seconds = to_double(f[8], no);
    r.mu = to_double(f[9], no);
    r.rb_norm = to_double(f[10], no);
    r.rc_norm = to_double(f[11], no);
    r.objective = to_double(f[12], no);
    out.push_back(std::move(r));
  }
  return out;
}

std::string solver_key(const BenchmarkRecord& r, const std::vector<BenchmarkRecord>& all) {
  std::set<std::pair<double, BetaFormula>> settings;
  for (const auto& o : all) {
    if (o.algorithm == r.algorithm) settings.emplace(o.beta, o.beta_formula);
  }
  std::string key = to_string(r.algorithm);
  if (settings.size() > 1) key += "[beta=" + fmt(r.beta) + "," + to_string(r.beta_formula) + "]";
  return key;
}

double ProfileCurve::fraction_at(double t) const {
  const auto it = std::upper_bound(tau.begin(), tau.end(), t);
  if (it == tau.begin()) return 0.0;
  return fraction[static_cast<std::size_t>(it - tau.begin()) - 1];
}

std::vector<ProfileCurve> performance_profile(const std::vector<BenchmarkRecord>& records, ProfileMetric metric) {
  if (records.empty()) throw std::invalid_argument("performance_profile: no records");
  std::vector<std::string> solvers;
  std::map<std::string, std::map<std::string, const BenchmarkRecord*>> table;  // solver -> problem -> record
  std::set<std::string> problems;
  for (const auto& r : records) {
    const std::string key = solver_key(r, records);
    if (!table.contains(key)) solvers.push_back(key);
    if (!table[key].emplace(r.problem, &r).second) {
      throw std::invalid_argument("performance_profile: duplicate record for " + key + " on " + r.problem);
    }
    problems.insert(r.problem);
  }
  for (const auto& s : solvers) {
    if (table[s].size() != problems.size()) {
      throw std::invalid_argument("performance_profile: solver " + s + " does not cover every problem");
    }
  }

  constexpr double kInfRatio = std::numeric_limits<double>::infinity();
  auto value = [metric](const BenchmarkRecord& r) {
    return metric == ProfileMetric::Time ? std::max(r.time_seconds, 1e-6)
                                         : std::max(static_cast<double>(r.iterations), 1.0);
  };
  std::map<std::string, std::vector<double>> ratios;
  for (const auto& p : problems) {
    double best = kInfRatio;
    for (const auto& s : solvers) {
      const BenchmarkRecord& r = *table[s][p];
      if (r.solved()) best = std::min(best, value(r));
    }
    for (const auto& s : solvers) {
      const BenchmarkRecord& r = *table[s][p];
      ratios[s].push_back(r.solved() ? value(r) / best : kInfRatio);
    }
  }

  std::vector<ProfileCurve> out;
  const double count = static_cast<double>(problems.size());
  for (const auto& s : solvers) {
    ProfileCurve c;
    c.solver = s;
    std::vector<double> r = ratios[s];
    std::sort(r.begin(), r.end());
    for (std::size_t i = 0; i < r.size() && std::isfinite(r[i]); ++i) {
      if (i + 1 < r.size() && r[i + 1] == r[i]) continue;
      c.tau.push_back(r[i]);
      c.fraction.push_back(static_cast<double>(i + 1) / count);
    }
    out.push_back(std::move(c));
  }
  return out;
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileCurve>& curves) {
  os << "solver,tau,fraction\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.tau.size(); ++i) os << c.solver << ',' << fmt(c.tau[i]) << ',' << fmt(c.fraction[i]) << "\n";
  }
}

std::string AverageTimeReport::to_text() const {
  if (empty()) return "no qualifying problems\n";
  std::ostringstream os;
  os << "problems: " << problems.size() << "\n";
  for (const auto& a : per_solver) os << a.solver << ' ' << a.mean_seconds << "\n";
  return os.str();
}

AverageTimeReport average_time_report(const std::vector<BenchmarkRecord>& records, double threshold_seconds) {
  std::vector<std::string> solvers;
  std::map<std::string, std::map<std::string, double>> times;  // problem -> solver -> seconds
  for (const auto& r : records) {
    const std::string key = solver_key(r, records);
    if (std::find(solvers.begin(), solvers.end(), key) == solvers.end()) solvers.push_back(key);
    times[r.problem][key] = r.time_seconds;
  }
  AverageTimeReport rep;
  for (const auto& [problem, by_solver] : times) {
    const bool all = std::all_of(solvers.begin(), solvers.end(), [&](const std::string& s) {
      const auto it = by_solver.find(s);
      return it != by_solver.end() && it->second >= threshold_seconds;
    });
    if (all) rep.problems.push_back(problem);
  }
  if (rep.problems.empty()) return rep;
  for (const auto& s : solvers) {
    double sum = 0.0;
    for (const auto& p : rep.problems) sum += times[p][s];
    rep.per_solver.push_back({s, sum / static_cast<double>(rep.problems.size())});
  }
  return rep;
}

}  // namespace arclp
