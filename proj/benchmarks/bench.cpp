// Microbenchmarks for the hot paths: the circulation solver, circuit
// enumeration, and the end-to-end optimizers.
#include <benchmark/benchmark.h>

#include <random>

#include "sinkstable/circulation.hpp"
#include "sinkstable/optimize.hpp"
#include "sinkstable/stability.hpp"

using namespace sinkstable;

namespace {

Digraph random_digraph(std::mt19937& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int t = 0; t < n; ++t)
    for (int h = 0; h < n; ++h)
      if (t != h && coin(rng)) edges.push_back({t, h});
  return Digraph(n, std::move(edges));
}

/// Circulation network shaped like the node-split coverage networks the
/// optimizers build: a ring of node pairs with random costs and demands.
FlowNetwork ring_network(int n, std::mt19937& rng) {
  std::uniform_int_distribution<long long> cost(0, 20);
  std::uniform_int_distribution<long long> demand(0, 3);
  FlowNetwork net;
  net.n = 2 * n;
  for (int i = 0; i < n; ++i) {
    net.arcs.push_back({2 * i, 2 * i + 1, demand(rng), kUnbounded, 0});
    net.arcs.push_back({2 * i + 1, 2 * ((i + 1) % n), 0, kUnbounded, cost(rng)});
    net.arcs.push_back({2 * i + 1, 2 * ((i + 2) % n), 0, kUnbounded, cost(rng)});
  }
  return net;
}

void BM_min_cost_circulation(benchmark::State& state) {
  std::mt19937 rng(42);
  FlowNetwork net = ring_network(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    auto res = min_cost_circulation(net);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_min_cost_circulation)->Arg(16)->Arg(64)->Arg(256);

void BM_enumerate_circuits(benchmark::State& state) {
  std::mt19937 rng(7);
  Digraph d = random_digraph(rng, static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state) {
    long long count = 0;
    enumerate_circuits(d, [&](const Circuit&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_enumerate_circuits)->Arg(6)->Arg(8)->Arg(10);

void BM_max_sink_stable(benchmark::State& state) {
  std::mt19937 rng(11);
  Digraph d = random_digraph(rng, static_cast<int>(state.range(0)), 0.2);
  std::vector<long long> w(d.node_count(), 1);
  for (auto _ : state) {
    MinMaxResult r = max_sink_stable(d, w);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_max_sink_stable)->Arg(10)->Arg(30)->Arg(60);

void BM_check_sink_stable(benchmark::State& state) {
  std::mt19937 rng(13);
  Digraph d = random_digraph(rng, static_cast<int>(state.range(0)), 0.15);
  // largest sink-stable set as the query set
  std::vector<long long> w(d.node_count(), 1);
  MinMaxResult opt = max_sink_stable(d, w);
  NodeSet s(d.node_count());
  for (NodeId v = 0; v < d.node_count(); ++v)
    if (opt.primal[v]) s.add(v);
  for (auto _ : state) {
    auto res = check_sink_stable(d, s);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_check_sink_stable)->Arg(10)->Arg(30)->Arg(60);

void BM_flat_transversal(benchmark::State& state) {
  std::mt19937 rng(17);
  Digraph d = random_digraph(rng, static_cast<int>(state.range(0)), 0.3);
  for (auto _ : state) {
    EdgeSet f = flat_transversal(d);
    benchmark::DoNotOptimize(f);
  }
}
// kept within the supported strong-component size for the order search
BENCHMARK(BM_flat_transversal)->Arg(6)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
