// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails. All checks are exact; the only tolerances are wall-clock limits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "chord/game_engine.hpp"
#include "chord/graph_chords.hpp"
#include "chord/interval_chords.hpp"
#include "chord/partitions.hpp"
#include "chord/subset_space.hpp"
#include "support.hpp"

namespace chord::test {
namespace {

constexpr double common_chord_seconds = 30;
constexpr double necklace_seconds = 10;
constexpr double double_cover_solver_seconds = 120;

constexpr std::size_t density_pairs = 1000;
constexpr std::size_t homotopy_cases = 500;
constexpr std::size_t prefix_samples = 64;
constexpr std::size_t solver_cases = 200;
constexpr std::size_t oracle_cases = 20;
constexpr std::size_t euler_cases = 200;
constexpr std::size_t functions_per_certificate = 50;
constexpr std::size_t playouts = 10'000;
constexpr std::size_t metric_triples = 1000;

struct Outcome {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string note;

  void expect(bool ok) {
    ++checks;
    failures += ok ? 0 : 1;
  }
};

struct Criterion {
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

std::vector<std::pair<Step1D, Step1D>> density_corpus() {
  Rng rng(1001);
  std::vector<std::pair<Step1D, Step1D>> out;
  for (std::size_t i = 0; i < density_pairs; ++i) {
    Step1D f = random_density(rng);
    out.emplace_back(std::move(f), random_density(rng));
  }
  return out;
}

Outcome common_chords() {
  Outcome o;
  for (const auto& [f, g] : density_corpus()) {
    for (const Rational& r : {q(0), q(1, 5), q(1, 3), q(1, 2), q(3, 4), q(1)}) {
      const CommonChord c = find_common_chord(f, g, r);
      const Rational a = f.integral(c.interval.lo, c.interval.hi);
      const Rational b = g.integral(c.interval.lo, c.interval.hi);
      o.expect(a == b && (a == r || a == 1 - r));
    }
  }
  return o;
}

Outcome unit_fraction_chords() {
  Outcome o;
  for (const auto& [f, g] : density_corpus()) {
    for (unsigned k = 1; k <= 8; ++k) {
      const Rational w = q(1, k);
      const ChordInterval j = find_common_chord_k(f, g, k);
      o.expect(f.integral(j.lo, j.hi) == w && g.integral(j.lo, j.hi) == w);
      for (const Step1D* h : {&f, &g}) {
        const ChordInterval fixed = find_fixed_window(*h, k);
        o.expect(fixed.hi - fixed.lo == w && h->integral(fixed.lo, fixed.hi) == w);
        Rational sum = 0;
        for (unsigned i = 0; i < k; ++i) sum += h->integral(q(i, k), q(i + 1, k));
        o.expect(sum == 1 && window_sum(*h, k) == 1);
      }
    }
  }
  return o;
}

Outcome necklaces() {
  Outcome o;
  for (std::size_t N = 1; N <= 4; ++N) {
    std::string s = std::string(2 * N, 'B') + std::string(2 * N, 'W');
    do {
      const auto pearls = parse_necklace(s);
      const NecklaceSplit split = necklace_split(pearls);
      const std::size_t blacks = static_cast<std::size_t>(
          std::count(s.begin() + static_cast<long>(split.first - 1), s.begin() + static_cast<long>(split.last), 'B'));
      bool cuts_ok = split.cuts.size() <= 2;
      for (std::size_t c : split.cuts) cuts_ok = cuts_ok && (c == split.first - 1 || c == split.last) && c > 0 && c < 4 * N;
      o.expect(split.last + 1 - split.first == 2 * N && blacks == N && cuts_ok);
      const auto counts = necklace_window_counts(pearls);
      for (std::size_t i = 1; i < counts.size(); ++i) {
        o.expect((counts[i] > counts[i - 1] ? counts[i] - counts[i - 1] : counts[i - 1] - counts[i]) <= 1);
      }
    } while (std::next_permutation(s.begin(), s.end()));
  }
  return o;
}

Outcome double_covers() {
  Outcome o;
  const auto graphs = all_min_degree_two_graphs(6);
  for (const MetricGraph& g : graphs) {
    const DoubleCover c = compute_double_cover(g);
    bool ok = verify_double_cover(g, c.paths);
    for (const auto& p : c.paths) ok = ok && is_semi_simple(g, p);
    for (std::size_t m : edge_multiplicity(g, c.paths)) ok = ok && m == 2;
    o.expect(ok);
  }
  o.note = std::to_string(graphs.size()) + " graphs";
  return o;
}

std::vector<Rational> sample_times(const MoveSchedule& s) {
  std::vector<Rational> times;
  for (std::size_t i = 0; i <= prefix_samples; ++i) {
    times.push_back(s.duration() * q(static_cast<long>(i), static_cast<long>(prefix_samples)));
  }
  return times;
}

Outcome homotopies() {
  Outcome o;
  Rng rng(1005);
  std::size_t made = 0;
  while (made < homotopy_cases) {
    const MetricGraph g = random_graph(rng, 8, false);
    const long total = 12 * static_cast<long>(g.edge_count());
    if (total < 24) continue;
    ++made;
    const Rational r = q(uniform(rng, 1, total - 1), 12);
    const ConnSubset a = random_conn_subset(g, r, rng);
    const ConnSubset b = random_conn_subset(g, r, rng);
    const MoveSchedule s = connect_in_xr(g, a, b, r);
    const auto times = sample_times(s);
    std::vector<ConnSubset> sets;
    for (const Rational& t : times) {
      const ConnSubset u = apply_prefix(g, s, t);
      o.expect(measure(u) == r && is_connected(g, u));
      sets.push_back(u);
    }
    for (std::size_t i = 1; i < sets.size(); ++i) {
      o.expect(metric_d(g, sets[i - 1], sets[i]) <= 2 * (times[i] - times[i - 1]));
    }
    for (int j = 0; j < 16; ++j) {
      const std::size_t x = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(sets.size()) - 1));
      const std::size_t y = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(sets.size()) - 1));
      o.expect(metric_d(g, sets[x], sets[y]) <= 2 * abs(times[x] - times[y]));
    }
    o.expect(sets.back() == b);

    const ConnSubset c = random_conn_subset(g, q(uniform(rng, 0, total), 12), rng);
    const auto segs = c.set().segments();
    const EdgeSegment& seg = segs[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(segs.size()) - 1))];
    const GraphPoint x{seg.edge, seg.lo + (seg.hi - seg.lo) * q(uniform(rng, 0, 4), 4)};
    const MoveSchedule ret = retraction_schedule(g, c, x);
    std::optional<ConnSubset> before;
    for (const Rational& t : sample_times(ret)) {
      const ConnSubset u = apply_prefix(g, ret, t);
      o.expect(measure(u) == measure(c) - t && u.set().contains(g, x));
      if (before) o.expect(subset_of(g, u, *before));
      before = u;
    }
    o.expect(*before == ConnSubset::point(g, x));
  }
  return o;
}

bool solves(const MetricGraph& g, const StepFunction& f, const Rational& r, const ChordSolution& s) {
  return is_connected(g, s.set) && measure(s.set) == r && integral_subset(f, s.set) == 0 && s.measure == r &&
         s.integral == 0;
}

Outcome double_cover_solver() {
  Outcome o;
  Rng rng(1006);
  const std::vector<Rational> fixed = {0, q(1, 4), q(1, 3), q(1, 2), q(2, 3), 1};
  for (std::size_t i = 0; i < solver_cases; ++i) {
    const MetricGraph g = random_graph(rng, 10, true);
    const StepFunction f = random_zero_mean_function(g, rng);
    const Rational r = i % 2 == 0 ? fixed[(i / 2) % fixed.size()] : q(uniform(rng, 0, 60), 60);
    o.expect(solves(g, f, r, graph_chord_solve(g, f, r)));
  }
  // 24 cells per edge; connected unions of k cells bracket zero.
  std::size_t oracle = 0;
  for (const MetricGraph& g : all_min_degree_two_graphs(3)) {
    for (int t = 0; t < 3 && oracle < 2 * oracle_cases; ++t, ++oracle) {
      const StepFunction f = random_zero_mean(g, rng);
      const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 24));
      Rational lo = 0;
      Rational hi = 0;
      bool first = true;
      for_each_grid_union(g, f, 24, k, [&](const std::vector<std::size_t>&, const Rational& sum) {
        if (first || sum < lo) lo = sum;
        if (first || sum > hi) hi = sum;
        first = false;
      });
      const Rational r = q(static_cast<long>(k), 24);
      o.expect(!first && lo <= 0 && hi >= 0 && solves(g, f, r, graph_chord_solve(g, f, r)));
    }
  }
  o.note = std::to_string(oracle) + " oracle instances";
  return o;
}

Outcome euler_solver() {
  Outcome o;
  Rng rng(1007);
  for (std::size_t i = 0; i < euler_cases; ++i) {
    const MetricGraph g = random_euler_graph(rng, 10);
    const StepFunction f = random_zero_mean_function(g, rng);
    const long edges = static_cast<long>(g.edge_count());
    for (const Rational& r : {q(0), q(uniform(rng, 1, 12 * edges - 1), 12), q(uniform(rng, 0, edges)), q(edges)}) {
      o.expect(solves(g, f, r, euler_chord_solve(g, f, r)));
    }
    const ChordSolution all = euler_chord_solve(g, f, edges);
    o.expect(all.set == ConnSubset::whole(g) && integral_subset(f, all.set) == 0);
  }
  return o;
}

Outcome chord_inclusion() {
  Outcome o;
  Rng rng(1008);
  std::vector<std::pair<MetricGraph, PartitionCertificate>> certs;
  for (const MetricGraph& g : {triangle(), theta(), figure_eight(), dumbbell()}) {
    for (unsigned k = 1; k <= 4; ++k) certs.emplace_back(g, construct_partition_1k(g, k));
  }
  for (int i = 0; i < 10; ++i) {
    const MetricGraph g = random_graph(rng, 8, true);
    certs.emplace_back(g, construct_partition_1k(g, static_cast<unsigned>(uniform(rng, 1, 6))));
  }
  for (int i = 0; i < 10; ++i) {
    const MetricGraph g = random_euler_graph(rng, 6);
    const unsigned k = static_cast<unsigned>(g.edge_count() * static_cast<std::size_t>(uniform(rng, 1, 3)));
    certs.emplace_back(g, construct_partition_euler(g, k));
  }
  for (const auto& [g, cert] : certs) {
    o.expect(cert.r <= 1 && verify_partition(g, cert));
    for (std::size_t j = 0; j < functions_per_certificate; ++j) {
      const StepFunction f = random_zero_mean_function(g, rng);
      o.expect(solves(g, f, cert.r, graph_chord_solve(g, f, cert.r)));
    }
  }
  o.note = std::to_string(certs.size()) + " certificates";
  return o;
}

Outcome winner_guarantee() {
  Outcome o;
  for (unsigned N = 1; N <= 4; ++N) {
    for (unsigned n = 1; n <= std::min(N, 2u); ++n) {
      const WinnerReport r = winner_guarantee_check(GameConfig{CircleBoard{2 * N}, N, 1, n});
      o.expect(r.exhaustive && r.violations == 0);
    }
  }
  EulerBoard eight{figure_eight(), {}};
  for (EdgeIndex e = 0; e < 2; ++e) {
    for (long j = 0; j < 4; ++j) eight.dots.push_back({e, q(2 * j + 1, 8)});
  }
  const WinnerReport r = random_playouts(GameConfig{eight, 4, 2, 1}, playouts, 1009);
  o.expect(r.cases == playouts && r.violations == 0);
  o.note = std::to_string(r.cases) + " figure-eight playouts";
  return o;
}

Outcome metric_properties() {
  Outcome o;
  Rng rng(1010);
  for (std::size_t i = 0; i < metric_triples; ++i) {
    const MetricGraph g = random_graph(rng, 6, false);
    const long total = 12 * static_cast<long>(g.edge_count());
    auto pick = [&] { return random_conn_subset(g, q(uniform(rng, 0, total), 12), rng); };
    const ConnSubset a = pick();
    const ConnSubset b = pick();
    const ConnSubset c = pick();
    const Rational ab = metric_d(g, a, b);
    o.expect(metric_d(g, a, a) == 0 && ab == metric_d(g, b, a) && (ab > 0) == (a != b) &&
             metric_d(g, a, c) <= ab + metric_d(g, b, c));
    const StepFunction f = random_function(g, rng);
    o.expect(abs(integral_subset(f, a) - integral_subset(f, b)) <= f.max_abs() * ab);
  }
  return o;
}

}  // namespace
}  // namespace chord::test

int main() {
  using namespace chord::test;
  const std::vector<Criterion> criteria = {
      {"common chord of two densities (r or 1-r)", common_chord_seconds, common_chords},
      {"1/k chords and sliding-window identity", 0, unit_fraction_chords},
      {"necklace two-cut split, N <= 4", necklace_seconds, necklaces},
      {"double cover of all graphs up to 6 edges", 0, double_covers},
      {"homotopies in X_r and retractions", 0, homotopies},
      {"zero-integral sets of measure r in [0,1]", double_cover_solver_seconds, double_cover_solver},
      {"Euler graphs have every chord", 0, euler_solver},
      {"partition certificates imply chords", 0, chord_inclusion},
      {"dot game always has a loser", 0, winner_guarantee},
      {"metric axioms and Lipschitz integrals", 0, metric_properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    std::string error;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || seconds < c.limit_seconds;
    const bool pass = error.empty() && o.failures == 0 && o.checks > 0 && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s  %-44s %zu checks, %zu failures, %.2f s", pass ? "PASS" : "FAIL", c.name, o.checks, o.failures,
                seconds);
    if (c.limit_seconds > 0) std::printf(" (limit %.0f s)", c.limit_seconds);
    if (!o.note.empty()) std::printf(", %s", o.note.c_str());
    if (!error.empty()) std::printf(", exception: %s", error.c_str());
    std::printf("\n");
  }
  return failed == 0 ? 0 : 1;
}
