#include <benchmark/benchmark.h>

#include "planted/cloning.hpp"
#include "planted/instances.hpp"
#include "planted/lifting.hpp"
#include "planted/linalg.hpp"
#include "planted/reductions.hpp"
#include "planted/rejection.hpp"
#include "planted/solvers.hpp"

using namespace planted;

namespace {

ProblemParams pc_params(int n, int k) {
  ProblemParams p;
  p.problem = Problem::PC;
  p.n = n;
  p.k = k;
  return p;
}

void BM_GaussianKernel(benchmark::State& st) {
  const KernelSpec spec = make_kernel_g(1000, 1.0, 0.5);
  RandomStream r(1);
  bool b = false;
  for (auto _ : st) {
    benchmark::DoNotOptimize(rejection_kernel(b, spec, r));
    b = !b;
  }
}
BENCHMARK(BM_GaussianKernel);

void BM_PcLift(benchmark::State& st) {
  RandomStream r(2);
  const int n = static_cast<int>(st.range(0));
  const Graph g = gen_graph(pc_params(n, 8), Hypothesis::H1, r).graph;
  for (auto _ : st) benchmark::DoNotOptimize(pc_lift(g, 2, r));
}
BENCHMARK(BM_PcLift)->Arg(64)->Arg(256);

void BM_BcReduce(benchmark::State& st) {
  RandomStream r(3);
  const int n = static_cast<int>(st.range(0));
  const Graph g = gen_graph(pc_params(n, 8), Hypothesis::H1, r).graph;
  for (auto _ : st) benchmark::DoNotOptimize(bc_reduce(g, 1, r));
}
BENCHMARK(BM_BcReduce)->Arg(64)->Arg(256);

void BM_ReflectionClone(benchmark::State& st) {
  RandomStream r(4);
  const int n = static_cast<int>(st.range(0));
  const RealMatrix m = standard_normal(n, n, r);
  for (auto _ : st) benchmark::DoNotOptimize(reflection_clone(m, 1, r));
}
BENCHMARK(BM_ReflectionClone)->Arg(128)->Arg(512);

void BM_TopEigen(benchmark::State& st) {
  RandomStream r(5);
  const int n = static_cast<int>(st.range(0));
  const RealMatrix g = standard_normal(n, n, r);
  const RealMatrix s = g + g.transpose();
  for (auto _ : st) benchmark::DoNotOptimize(top_eigen(s).value);
}
BENCHMARK(BM_TopEigen)->Arg(256)->Arg(1024);

void BM_RandomRotate(benchmark::State& st) {
  RandomStream r(6);
  const RealMatrix m = standard_normal(64, 64, r);
  for (auto _ : st) benchmark::DoNotOptimize(random_rotate(m, 2, r));
}
BENCHMARK(BM_RandomRotate);

void BM_RosSearchArgmax(benchmark::State& st) {
  RandomStream r(7);
  const RealMatrix a = standard_normal(30, 30, r);
  const int k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(ros_search_argmax(a, k, k).value);
}
BENCHMARK(BM_RosSearchArgmax)->Arg(2)->Arg(4);

void BM_SparseEig(benchmark::State& st) {
  RandomStream r(8);
  const RealMatrix g = standard_normal(16, 16, r);
  const RealMatrix s = g * g.transpose();
  for (auto _ : st) benchmark::DoNotOptimize(spca_sparse_eig(s, 4).first);
}
BENCHMARK(BM_SparseEig);

}  // namespace

BENCHMARK_MAIN();
