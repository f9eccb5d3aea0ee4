#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "chord/game_engine.hpp"
#include "chord/graph_chords.hpp"
#include "chord/interval_chords.hpp"

namespace chord {
namespace {

// Wheel with `spokes` spokes: hub h, rim r0..r{k-1}. Minimum degree 3.
MetricGraph wheel(std::size_t spokes) {
  std::vector<std::string> vertices = {"h"};
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < spokes; ++i) vertices.push_back("r" + std::to_string(i));
  for (std::size_t i = 0; i < spokes; ++i) {
    const std::string rim = "r" + std::to_string(i);
    const std::string next = "r" + std::to_string((i + 1) % spokes);
    edges.push_back({"s" + std::to_string(100 + i), "h", rim});
    edges.push_back({"t" + std::to_string(100 + i), rim, next});
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

// Cycle of `n` edges with one extra loop at every vertex: an Euler graph.
MetricGraph looped_cycle(std::size_t n) {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    edges.push_back({"c" + std::to_string(100 + i), vertices[i], vertices[(i + 1) % n]});
    edges.push_back({"l" + std::to_string(100 + i), vertices[i], vertices[i]});
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

// Positive step density on [0,1] with `pieces` equal pieces, integral 1.
Step1D density(long pieces, std::mt19937_64& rng) {
  std::vector<long> weights;
  long sum = 0;
  for (long i = 0; i < pieces; ++i) sum += weights.emplace_back(1 + static_cast<long>(rng() % 5));
  std::vector<StepPiece> out;
  for (long i = 0; i < pieces; ++i) out.push_back({frac(i, pieces), frac(i + 1, pieces), frac(weights[i] * pieces, sum)});
  return Step1D(out);
}

void BM_CommonChord(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Step1D f = density(state.range(0), rng);
  const Step1D g = density(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(find_common_chord(f, g, frac(1, 3)));
}
BENCHMARK(BM_CommonChord)->Arg(8)->Arg(64)->Arg(512);

void BM_DoubleCover(benchmark::State& state) {
  const MetricGraph g = wheel(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_double_cover(g));
}
BENCHMARK(BM_DoubleCover)->Arg(4)->Arg(16)->Arg(64);

void BM_GraphChordSolve(benchmark::State& state) {
  const MetricGraph g = wheel(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(2);
  const StepFunction f = random_zero_mean(g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(graph_chord_solve(g, f, frac(2, 3)));
}
BENCHMARK(BM_GraphChordSolve)->Arg(4)->Arg(8)->Arg(16);

void BM_EulerChordSolve(benchmark::State& state) {
  const MetricGraph g = looped_cycle(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(3);
  const StepFunction f = random_zero_mean(g, rng);
  const Rational r = frac(static_cast<long>(g.edge_count()), 3);
  for (auto _ : state) benchmark::DoNotOptimize(euler_chord_solve(g, f, r));
}
BENCHMARK(BM_EulerChordSolve)->Arg(4)->Arg(16)->Arg(64);

void BM_NecklaceSplit(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::string s = std::string(static_cast<std::size_t>(2 * state.range(0)), 'B') +
                  std::string(static_cast<std::size_t>(2 * state.range(0)), 'W');
  std::shuffle(s.begin(), s.end(), rng);
  const auto pearls = parse_necklace(s);
  for (auto _ : state) benchmark::DoNotOptimize(necklace_split(pearls));
}
BENCHMARK(BM_NecklaceSplit)->Arg(4)->Arg(256)->Arg(4096);

void BM_GamePlayouts(benchmark::State& state) {
  EulerBoard board{MetricGraph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}}), {}};
  for (EdgeIndex e = 0; e < 2; ++e) {
    for (long j = 0; j < 4; ++j) board.dots.push_back({e, frac(2 * j + 1, 8)});
  }
  const GameConfig config{board, 4, 2, 1};
  std::uint64_t seed = 5;
  for (auto _ : state) benchmark::DoNotOptimize(random_playouts(config, 100, seed++));
}
BENCHMARK(BM_GamePlayouts);

}  // namespace
}  // namespace chord

BENCHMARK_MAIN();
