#include <benchmark/benchmark.h>

#include <random>

#include "arclp/newton.hpp"

using namespace arclp;

namespace {

SparseMatrix banded(int m, int n, int band) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<Triplet> t;
  for (int i = 0; i < m; ++i) {
    t.push_back({i, i, 4.0});
    for (int k = 1; k <= band; ++k) t.push_back({i, (i + k * 7) % n, normal(rng)});
  }
  return SparseMatrix::from_triplets(m, n, t);
}

Vec positive(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  Vec v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

void factor_and_solve(benchmark::State& state, KernelMode mode) {
  const int m = static_cast<int>(state.range(0));
  const int n = 2 * m;
  const SparseMatrix A = banded(m, n, 4);
  const NewtonKernel kernel(A, mode);
  const Vec p = positive(n, 2);
  const Vec q = positive(n, 3);
  const Vec r1 = positive(m, 4);
  const Vec r2 = positive(n, 5);
  const Vec r3 = positive(n, 6);
  for (auto _ : state) {
    const NewtonFactor f = kernel.factor(p, q);
    benchmark::DoNotOptimize(solve_block(f, r1, r2, r3));
  }
}

void BM_DenseKernel(benchmark::State& state) { factor_and_solve(state, KernelMode::Dense); }
void BM_SparseKernel(benchmark::State& state) { factor_and_solve(state, KernelMode::Sparse); }

}  // namespace

BENCHMARK(BM_DenseKernel)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_SparseKernel)->Arg(50)->Arg(200)->Arg(800);
