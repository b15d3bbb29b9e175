#include <benchmark/benchmark.h>

#include "arclp/harness.hpp"

using namespace arclp;

namespace {

void run(benchmark::State& state, const char* problem, Algorithm a) {
  const PreparedProblem p = prepare_problem(std::string(ARCLP_DATA_DIR) + "/netlib/" + problem + ".mps");
  if (!p.ok()) {
    state.SkipWithError("problem unavailable");
    return;
  }
  SolverConfig cfg;
  cfg.algorithm = a;
  int iterations = 0;
  for (auto _ : state) iterations = solve(p.lp, cfg).iterations;
  state.counters["iterations"] = iterations;
}

}  // namespace

BENCHMARK_CAPTURE(run, afiro_alg2, "AFIRO", Algorithm::Alg2);
BENCHMARK_CAPTURE(run, afiro_arc, "AFIRO", Algorithm::Arc);
BENCHMARK_CAPTURE(run, afiro_line, "AFIRO", Algorithm::Line);
BENCHMARK_CAPTURE(run, kb2_alg2, "KB2", Algorithm::Alg2);
BENCHMARK_CAPTURE(run, kb2_alg1, "KB2", Algorithm::Alg1);
BENCHMARK_CAPTURE(run, beaconfd_alg2, "BEACONFD", Algorithm::Alg2);
BENCHMARK_CAPTURE(run, beaconfd_line, "BEACONFD", Algorithm::Line);
BENCHMARK_MAIN();
