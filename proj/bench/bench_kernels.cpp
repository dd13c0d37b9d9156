// Serial against OpenMP for the three parallel kernels.

#include <hrg/canonical.hpp>
#include <hrg/exhaustive_sets.hpp>
#include <hrg/operator.hpp>
#include <hrg/periodicity.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace hrg;

// One vertex, m edges of color 1 and n of color 2, squares f_i e_j = e_j' f_i'
// by a fixed shift so the graph is periodic only for special (m, n).
KGraph single_vertex(unsigned m, unsigned n) {
  GraphSpec s;
  s.rank = 2;
  s.vertices = {"v"};
  for (unsigned i = 1; i <= m; ++i) s.edges.push_back({"f" + std::to_string(i), 1, "v", "v"});
  for (unsigned j = 1; j <= n; ++j) s.edges.push_back({"e" + std::to_string(j), 2, "v", "v"});
  for (unsigned k = 0; k < m * n; ++k) {
    unsigned t = (k * 7 + 3) % (m * n);
    s.squares.push_back({"f" + std::to_string(k / n + 1), "e" + std::to_string(k % n + 1),
                         "e" + std::to_string(t / m + 1), "f" + std::to_string(t % m + 1)});
  }
  return KGraph::build(s);
}

Execution exec_of(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_minimal_exhaustive(benchmark::State& state) {
  auto g = single_vertex(4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_exhaustive_edge_sets(g, 0, exec_of(state)));
}

void BM_ck_pair_defects(benchmark::State& state) {
  auto cbs = canonical_bs(single_vertex(4, 4));
  auto f = build_generators(cbs);
  for (auto _ : state) benchmark::DoNotOptimize(ck_pair_defects(f, exec_of(state)));
}

void BM_periodicity_pair_scan(benchmark::State& state) {
  auto g = single_vertex(3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(periodicity_pair_scan(g, 4, 4, exec_of(state)));
}

}  // namespace

BENCHMARK(BM_minimal_exhaustive)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ck_pair_defects)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_periodicity_pair_scan)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
