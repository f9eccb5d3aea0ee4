#include "chord/graph_chords.hpp"

#include <algorithm>
#include <numeric>

#include "chord/interval_chords.hpp"
#include "chord/subset_space.hpp"

namespace chord {

namespace {

Rational from_size(std::size_t n) { return Rational(static_cast<long>(n)); }

void require_zero_mean(const StepFunction& f) {
  if (integral_graph(f) != 0) throw PreconditionError("f must have total integral 0");
}

ConnSubset some_point(const MetricGraph& g) { return ConnSubset::point(g, g.vertex_point(0)); }

ChordSolution finish(const MetricGraph& g, const StepFunction& f, ConnSubset u,
                     std::vector<ClosedPath> cover, Rational time, const Rational& r) {
  const Rational mu = measure(u);
  const Rational value = integral_subset(f, u);
  if (mu != r || value != 0) throw InternalError("solver output fails its postcondition");
  (void)g;
  return {std::move(u), mu, value, std::move(cover), std::move(time)};
}

}  // namespace

Step1D lift(const StepFunction& f, const ClosedPath& walk) {
  if (walk.steps.empty()) throw PreconditionError("empty walk");
  Step1D out = along(f, walk.steps.front());
  for (std::size_t i = 1; i < walk.steps.size(); ++i) out = out.concat(along(f, walk.steps[i]));
  return out;
}

Subset walk_window(const MetricGraph& g, const ClosedPath& walk, const Rational& x,
                   const Rational& w) {
  const Rational n = from_size(walk.length());
  if (x < 0 || x >= n || w < 0 || w > n) throw PreconditionError("window out of range");
  if (w == 0) {
    const auto i = static_cast<std::size_t>(mpz_class(x.get_num() / x.get_den()).get_si());
    const Traversal& step = walk.steps[i];
    const Rational s = x - from_size(i);
    return Subset::point(g, {step.edge, step.forward ? s : Rational(1 - s)});
  }
  std::vector<EdgeSegment> segs;
  // The arc, unrolled onto [0, 2n).
  const Rational lo = x;
  const Rational hi = x + w;
  for (std::size_t k = 0; k < 2 * walk.length(); ++k) {
    const Rational a = max(lo, from_size(k));
    const Rational b = min(hi, from_size(k + 1));
    if (a > b) continue;
    const Traversal& step = walk.steps[k % walk.length()];
    const Rational s0 = a - from_size(k);
    const Rational s1 = b - from_size(k);
    if (step.forward) {
      segs.push_back({step.edge, s0, s1});
    } else {
      segs.push_back({step.edge, 1 - s1, 1 - s0});
    }
  }
  return Subset::from_segments(g, segs);
}

ConnSubset arc_on_semi_simple(const MetricGraph& g, const ClosedPath& c, const StepFunction& f,
                              const Rational& r) {
  if (r < 0 || r > 1) throw PreconditionError("window measure must lie in [0,1]");
  if (!is_semi_simple(g, c)) throw PreconditionError("path is not semi-simple");
  if (r == 0) return ConnSubset::point(g, g.vertex_point(start_vertex(g, c.steps.front())));
  const Step1D lifted = lift(f, c);
  const Rational n = from_size(c.length());
  const Rational target = r * lifted.total() / n;
  const Rational x = find_arc_chord_circle(lifted, r, target);
  Subset window = walk_window(g, c, x, r);
  if (measure(window) != r) throw InternalError("window overlaps itself");
  return ConnSubset::make(g, std::move(window));
}

ChordSolution graph_chord_solve(const MetricGraph& g, const StepFunction& f, const Rational& r) {
  if (r < 0 || r > 1) throw PreconditionError("r must lie in [0,1]");
  if (g.min_degree() < 2) throw PreconditionError("graph has a vertex of degree < 2");
  require_zero_mean(f);
  DoubleCover cover = compute_double_cover(g);
  if (r == 0) return finish(g, f, some_point(g), std::move(cover.paths), 0, r);

  std::vector<ConnSubset> windows;
  std::vector<int> signs;
  for (const auto& path : cover.paths) {
    windows.push_back(arc_on_semi_simple(g, path, f, r));
    signs.push_back(sign(integral_subset(f, windows.back())));
    if (signs.back() != sign(integral_path(f, path.steps))) {
      throw InternalError("window sign differs from its path integral sign");
    }
  }
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (signs[i] == 0) return finish(g, f, windows[i], std::move(cover.paths), 0, r);
  }
  for (std::size_t i = 0; i < windows.size(); ++i) {
    for (std::size_t j = i + 1; j < windows.size(); ++j) {
      if (signs[i] == signs[j]) continue;
      const MoveSchedule curve = connect_in_xr(g, windows[i], windows[j], r);
      ZeroOnCurve zero = find_zero_along(g, f, curve);
      return finish(g, f, std::move(zero.set), std::move(cover.paths), std::move(zero.time), r);
    }
  }
  throw InternalError("path integrals sum to zero yet share one strict sign");
}

ChordSolution euler_chord_solve(const MetricGraph& g, const StepFunction& f, const Rational& r) {
  const Rational total = from_size(g.edge_count());
  if (r < 0 || r > total) throw PreconditionError("r must lie in [0,|E|]");
  ClosedPath circuit = euler_circuit(g);
  require_zero_mean(f);
  std::vector<ClosedPath> cover = {circuit};
  if (r == 0) return finish(g, f, some_point(g), std::move(cover), 0, r);
  if (r == total) return finish(g, f, ConnSubset::whole(g), std::move(cover), 0, r);
  const Rational x = find_arc_chord_circle(lift(f, circuit), r, 0);
  Subset window = walk_window(g, circuit, x, r);
  return finish(g, f, ConnSubset::make(g, std::move(window)), std::move(cover), 0, r);
}

StepFunction random_zero_mean(const MetricGraph& g, std::mt19937_64& rng, unsigned denominator,
                              int amplitude) {
  std::uniform_int_distribution<int> value(-amplitude, amplitude);
  std::bernoulli_distribution cut(0.4);
  std::vector<Step1D> per_edge;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    std::vector<StepPiece> pieces;
    Rational from = 0;
    for (unsigned j = 1; j <= denominator; ++j) {
      if (j < denominator && !cut(rng)) continue;
      const Rational to = frac(j, denominator);
      pieces.push_back({from, to, value(rng)});
      from = to;
    }
    per_edge.emplace_back(pieces);
  }
  const StepFunction raw(g, std::move(per_edge));
  const Rational mean = integral_graph(raw) / from_size(g.edge_count());
  return combine(g, 1, raw, -mean, StepFunction::constant(g, 1));
}

std::optional<GridRange> grid_integral_range(const MetricGraph& g, const StepFunction& f,
                                             const Rational& r, unsigned q, std::size_t budget) {
  const Rational cells_needed = r * q;
  if (q == 0 || cells_needed.get_den() != 1 || r <= 0) return std::nullopt;
  const std::size_t k = cells_needed.get_num().get_ui();
  const std::size_t cells = g.edge_count() * q;
  if (k > cells) return std::nullopt;

  std::vector<Rational> value(cells);
  std::vector<std::vector<std::size_t>> adj(cells);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    for (unsigned j = 0; j < q; ++j) {
      value[e * q + j] = f.on(e).integral(frac(j, q), frac(j + 1, q));
      if (j + 1 < q) {
        adj[e * q + j].push_back(e * q + j + 1);
        adj[e * q + j + 1].push_back(e * q + j);
      }
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    std::vector<std::size_t> at;
    for (const auto& inc : g.incidences(v)) at.push_back(inc.edge * q + (inc.end == 0 ? 0 : q - 1));
    for (std::size_t a : at) {
      for (std::size_t b : at) {
        if (a != b) adj[a].push_back(b);
      }
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  // Enumerate connected cell sets of size k, each once, by extending from
  // its smallest cell with exclusive neighbours only.
  GridRange range;
  bool seen_any = false;
  bool over_budget = false;
  std::vector<int> near(cells, 0);  // members of the current set within distance <= 1

  auto touch = [&](std::size_t w, int delta) {
    near[w] += delta;
    for (std::size_t u : adj[w]) near[u] += delta;
  };

  auto extend = [&](auto&& self, std::size_t size, std::vector<std::size_t> ext, std::size_t root,
                    const Rational& sum) -> void {
    if (over_budget) return;
    if (size == k) {
      if (++range.visited > budget) {
        over_budget = true;
        return;
      }
      if (!seen_any || sum < range.lo) range.lo = sum;
      if (!seen_any || sum > range.hi) range.hi = sum;
      if (sum == 0) range.exact_zero = true;
      seen_any = true;
      return;
    }
    while (!ext.empty()) {
      const std::size_t w = ext.back();
      ext.pop_back();
      std::vector<std::size_t> next = ext;
      for (std::size_t u : adj[w]) {
        if (u > root && near[u] == 0 &&
            std::find(next.begin(), next.end(), u) == next.end()) {
          next.push_back(u);
        }
      }
      touch(w, 1);
      self(self, size + 1, std::move(next), root, sum + value[w]);
      touch(w, -1);
    }
  };

  for (std::size_t v = 0; v < cells && !over_budget; ++v) {
    std::vector<std::size_t> ext;
    for (std::size_t u : adj[v]) {
      if (u > v) ext.push_back(u);
    }
    touch(v, 1);
    extend(extend, 1, std::move(ext), v, value[v]);
    touch(v, -1);
  }
  if (over_budget || !seen_any) return std::nullopt;
  return range;
}

EvidenceReport chord_membership_evidence(const MetricGraph& g, const Rational& r,
                                         std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw PreconditionError("trials must be positive");
  EvidenceReport report;
  report.trials = trials;
  const Rational edges = from_size(g.edge_count());
  if (g.is_euler() && r >= 0 && r <= edges) {
    report.method = EvidenceReport::Method::euler_solver;
  } else if (g.min_degree() >= 2 && r >= 0 && r <= 1) {
    report.method = EvidenceReport::Method::double_cover_solver;
  }
  const unsigned q = static_cast<unsigned>(std::lcm(24UL, r.get_den().get_ui()));
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed + t;
    std::mt19937_64 rng(trial_seed);
    const StepFunction f = random_zero_mean(g, rng);
    bool ok = false;
    switch (report.method) {
      case EvidenceReport::Method::euler_solver:
        ok = euler_chord_solve(g, f, r).integral == 0;
        break;
      case EvidenceReport::Method::double_cover_solver:
        ok = graph_chord_solve(g, f, r).integral == 0;
        break;
      case EvidenceReport::Method::grid_search: {
        if (r == 0) {
          ok = true;
          break;
        }
        const auto range = grid_integral_range(g, f, r, q);
        if (!range) {
          ++report.inconclusive;
          continue;
        }
        ok = range->lo <= 0 && 0 <= range->hi;
        break;
      }
    }
    if (ok) {
      ++report.successes;
    } else {
      ++report.failures;
      report.failing_seeds.push_back(trial_seed);
    }
  }
  return report;
}

}  // namespace chord
