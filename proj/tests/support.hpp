#pragma once

// Shared fixtures, random generators and brute-force oracles for the tests.
// The oracles deliberately avoid the library's own search code.

#include <algorithm>
#include <bitset>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <unordered_set>

#include "chord/double_cover.hpp"
#include "chord/metric_graph.hpp"
#include "chord/step_function.hpp"

namespace chord::test {

inline Rational q(long p, long d = 1) { return frac(p, d); }

inline MetricGraph single_edge() { return MetricGraph({"u", "v"}, {{"a", "u", "v"}}); }
inline MetricGraph single_loop() { return MetricGraph({"v"}, {{"a", "v", "v"}}); }
inline MetricGraph triangle() {
  return MetricGraph({"a", "b", "c"}, {{"a", "a", "b"}, {"b", "b", "c"}, {"c", "c", "a"}});
}
inline MetricGraph theta() {
  return MetricGraph({"u", "v"}, {{"a", "u", "v"}, {"b", "u", "v"}, {"c", "u", "v"}});
}
inline MetricGraph figure_eight() { return MetricGraph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}}); }
inline MetricGraph dumbbell() {
  return MetricGraph({"u", "v"}, {{"a", "u", "u"}, {"b", "u", "v"}, {"c", "v", "v"}});
}
inline MetricGraph path3() {
  return MetricGraph({"x", "y", "z", "w"}, {{"a", "x", "y"}, {"b", "y", "z"}, {"c", "z", "w"}});
}

inline StepFunction constant_per_edge(const MetricGraph& g, const std::vector<Rational>& values) {
  std::vector<Step1D> per_edge;
  for (const auto& v : values) per_edge.emplace_back(Rational(1), v);
  return StepFunction(g, std::move(per_edge));
}

inline Step1D step_on_unit(std::initializer_list<std::pair<Rational, Rational>> to_value) {
  std::vector<StepPiece> pieces;
  Rational from = 0;
  for (const auto& [to, value] : to_value) {
    pieces.push_back({from, to, value});
    from = to;
  }
  return Step1D(pieces);
}

// ---------------------------------------------------------------------------
// Random instances.

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Random step function on [0, 1] with breakpoints on a 1/den grid and
/// integer values in [lo, hi].
inline Step1D random_step(Rng& rng, long den, long lo, long hi) {
  std::vector<StepPiece> pieces;
  Rational from = 0;
  for (long j = 1; j <= den; ++j) {
    if (j < den && uniform(rng, 0, 2) != 0) continue;
    pieces.push_back({from, q(j, den), Rational(uniform(rng, lo, hi))});
    from = q(j, den);
  }
  return Step1D(pieces);
}

/// Nonnegative density on [0, 1] with total integral exactly 1.
inline Step1D random_density(Rng& rng) {
  for (;;) {
    const Step1D raw = random_step(rng, uniform(rng, 1, 12), 0, 6);
    if (raw.total() == 0) continue;
    const Rational scale = 1 / raw.total();
    return combine(scale, raw, 0, raw);
  }
}

inline StepFunction random_function(const MetricGraph& g, Rng& rng) {
  std::vector<Step1D> per_edge;
  for (std::size_t e = 0; e < g.edge_count(); ++e) per_edge.push_back(random_step(rng, uniform(rng, 1, 6), -4, 4));
  return StepFunction(g, std::move(per_edge));
}

inline StepFunction zero_mean(const MetricGraph& g, const StepFunction& f) {
  const Rational mean = integral_graph(f) / Rational(static_cast<long>(g.edge_count()));
  return combine(g, 1, f, -mean, StepFunction::constant(g, 1));
}

inline StepFunction random_zero_mean_function(const MetricGraph& g, Rng& rng) {
  return zero_mean(g, random_function(g, rng));
}

inline bool connected_edges(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [a, b] : edges) parent[find(a)] = find(b);
  for (std::size_t v = 0; v < vertices; ++v) {
    if (find(v) != find(0)) return false;
  }
  return true;
}

inline MetricGraph graph_from_pairs(std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::string> names;
  for (std::size_t v = 0; v < vertices; ++v) names.push_back("v" + std::to_string(v));
  std::vector<EdgeSpec> specs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    specs.push_back({"e" + std::string(i < 10 ? "0" : "") + std::to_string(i), names[edges[i].first],
                     names[edges[i].second]});
  }
  return MetricGraph(names, specs);
}

/// Random connected multigraph (loops and parallel edges allowed) with at
/// most max_edges edges and, if asked, minimum degree >= 2.
inline MetricGraph random_graph(Rng& rng, std::size_t max_edges, bool min_degree_two) {
  for (;;) {
    const std::size_t edges_wanted = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_edges)));
    const std::size_t vertices = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(edges_wanted)));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 1; v < vertices; ++v) {
      edges.emplace_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(v) - 1)), v);
    }
    while (edges.size() < edges_wanted) {
      edges.emplace_back(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(vertices) - 1)),
                         static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(vertices) - 1)));
    }
    if (min_degree_two) {
      std::vector<std::size_t> degree(vertices, 0);
      for (auto [a, b] : edges) {
        ++degree[a];
        ++degree[b];
      }
      if (std::any_of(degree.begin(), degree.end(), [](std::size_t d) { return d < 2; })) continue;
    }
    std::shuffle(edges.begin(), edges.end(), rng);
    for (auto& e : edges) {
      if (uniform(rng, 0, 1)) std::swap(e.first, e.second);
    }
    return graph_from_pairs(vertices, edges);
  }
}

/// Random connected graph with every degree even and at most max_edges edges.
inline MetricGraph random_euler_graph(Rng& rng, std::size_t max_edges) {
  for (;;) {
    const MetricGraph g = random_graph(rng, max_edges, false);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(e.tail, e.head);
    std::vector<std::size_t> odd;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (g.degree(v) % 2) odd.push_back(v);
    }
    for (std::size_t i = 0; i + 1 < odd.size(); i += 2) edges.emplace_back(odd[i], odd[i + 1]);
    if (edges.size() > max_edges) continue;
    return graph_from_pairs(g.vertex_count(), edges);
  }
}

inline GraphPoint random_point(const MetricGraph& g, Rng& rng, long den = 12) {
  return {static_cast<EdgeIndex>(uniform(rng, 0, static_cast<long>(g.edge_count()) - 1)), q(uniform(rng, 0, den), den)};
}

/// Random closed connected subset of measure exactly r (0 < r < |E|), grown
/// by a random walk that keeps stepping until the union reaches measure r.
inline ConnSubset random_conn_subset(const MetricGraph& g, const Rational& r, Rng& rng, long den = 12) {
  for (int attempt = 0;; ++attempt) {
    const GraphPoint start = random_point(g, rng, den);
    Subset s = Subset::point(g, start);
    EdgeIndex e = start.edge;
    Rational t = start.t;
    int dir = uniform(rng, 0, 1) ? 1 : -1;
    for (int step = 0; step < 400 && measure(s) < r; ++step) {
      const Rational budget = r - measure(s);
      const Rational room = dir > 0 ? Rational(1 - t) : t;
      Rational go = min(budget, room);
      if (uniform(rng, 0, 3) == 0) go = min(go, q(uniform(rng, 1, den), den));
      const Rational t2 = t + dir * go;
      const std::vector<EdgeSegment> seg = {{e, min(t, t2), max(t, t2)}};
      s = set_union(g, s, Subset::from_segments(g, seg));
      t = t2;
      if (t == 0 || t == 1) {
        const VertexId v = t == 0 ? g.edge(e).tail : g.edge(e).head;
        const auto& inc = g.incidences(v);
        const Incidence next = inc[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(inc.size()) - 1))];
        e = next.edge;
        t = next.end == 0 ? Rational(0) : Rational(1);
        dir = next.end == 0 ? 1 : -1;
      } else if (uniform(rng, 0, 5) == 0) {
        dir = -dir;
      }
    }
    if (measure(s) == r) return ConnSubset::make(g, std::move(s));
  }
}

// ---------------------------------------------------------------------------
// Oracles.

/// Distance between grid points (t a multiple of 1/parts) by Dijkstra on the
/// graph with every edge cut into `parts` pieces, in units of 1/parts.
inline long grid_distance(const MetricGraph& g, const GraphPoint& a, const GraphPoint& b, long parts = 64) {
  const std::size_t nv = g.vertex_count();
  auto node = [&](EdgeIndex e, long j) -> std::size_t {
    if (j == 0) return g.edge(e).tail;
    if (j == parts) return g.edge(e).head;
    return nv + e * static_cast<std::size_t>(parts - 1) + static_cast<std::size_t>(j - 1);
  };
  const std::size_t n = nv + g.edge_count() * static_cast<std::size_t>(parts - 1);
  std::vector<std::vector<std::size_t>> adj(n);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (long j = 0; j < parts; ++j) {
      adj[node(e, j)].push_back(node(e, j + 1));
      adj[node(e, j + 1)].push_back(node(e, j));
    }
  }
  auto at = [&](const GraphPoint& p) {
    const Rational scaled = p.t * parts;
    return node(p.edge, scaled.get_num().get_si());
  };
  std::vector<long> dist(n, -1);
  std::queue<std::size_t> bfs;
  dist[at(a)] = 0;
  bfs.push(at(a));
  while (!bfs.empty()) {
    const std::size_t x = bfs.front();
    bfs.pop();
    for (std::size_t y : adj[x]) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        bfs.push(y);
      }
    }
  }
  return dist[at(b)];
}

/// Every connected union of k cells (each edge cut into q cells), found by
/// level-wise growth with explicit deduplication. Calls visit(cells, sum of
/// cell values).
template <std::size_t MaxCells = 256, class Visit>
void for_each_grid_union(const MetricGraph& g, const StepFunction& f, long q_cells, std::size_t k, Visit&& visit) {
  const std::size_t cells = g.edge_count() * static_cast<std::size_t>(q_cells);
  std::vector<std::vector<std::size_t>> adj(cells);
  std::vector<Rational> value(cells);
  std::map<VertexId, std::vector<std::size_t>> at_vertex;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (long j = 0; j < q_cells; ++j) {
      const std::size_t c = e * static_cast<std::size_t>(q_cells) + static_cast<std::size_t>(j);
      value[c] = f.on(e).integral(q(j, q_cells), q(j + 1, q_cells));
      if (j + 1 < q_cells) {
        adj[c].push_back(c + 1);
        adj[c + 1].push_back(c);
      }
    }
    at_vertex[g.edge(e).tail].push_back(e * static_cast<std::size_t>(q_cells));
    at_vertex[g.edge(e).head].push_back(e * static_cast<std::size_t>(q_cells) + static_cast<std::size_t>(q_cells - 1));
  }
  for (const auto& [v, list] : at_vertex) {
    for (std::size_t a : list) {
      for (std::size_t b : list) {
        if (a != b) adj[a].push_back(b);
      }
    }
  }
  using Bits = std::bitset<MaxCells>;
  std::unordered_set<Bits> level;
  for (std::size_t c = 0; c < cells; ++c) {
    Bits b;
    b.set(c);
    level.insert(b);
  }
  for (std::size_t size = 1; size < k; ++size) {
    std::unordered_set<Bits> next;
    for (const Bits& b : level) {
      for (std::size_t c = 0; c < cells; ++c) {
        if (!b.test(c)) continue;
        for (std::size_t d : adj[c]) {
          if (b.test(d)) continue;
          Bits grown = b;
          grown.set(d);
          next.insert(grown);
        }
      }
    }
    level = std::move(next);
  }
  for (const Bits& b : level) {
    Rational sum = 0;
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < cells; ++c) {
      if (b.test(c)) {
        sum += value[c];
        chosen.push_back(c);
      }
    }
    visit(chosen, sum);
  }
}

/// All connected multigraphs with 1..max_edges edges and minimum degree >= 2,
/// one per isomorphism class (canonical form: least sorted edge list over
/// all vertex relabellings).
inline std::vector<MetricGraph> all_min_degree_two_graphs(std::size_t max_edges) {
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;
  std::vector<MetricGraph> out;
  for (std::size_t m = 1; m <= max_edges; ++m) {
    for (std::size_t n = 1; n <= m; ++n) {
      std::vector<std::pair<std::size_t, std::size_t>> slots;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) slots.emplace_back(a, b);
      }
      std::set<Pairs> seen;
      std::vector<std::size_t> pick(m, 0);
      // Multisets of m slots as non-decreasing index sequences.
      for (;;) {
        Pairs edges;
        for (std::size_t i : pick) edges.push_back(slots[i]);
        std::vector<std::size_t> degree(n, 0);
        for (auto [a, b] : edges) {
          ++degree[a];
          ++degree[b];
        }
        if (std::all_of(degree.begin(), degree.end(), [](std::size_t d) { return d >= 2; }) &&
            connected_edges(n, edges)) {
          std::vector<std::size_t> perm(n);
          std::iota(perm.begin(), perm.end(), 0);
          Pairs best;
          do {
            Pairs relabelled;
            for (auto [a, b] : edges) relabelled.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
            std::sort(relabelled.begin(), relabelled.end());
            if (best.empty() || relabelled < best) best = relabelled;
          } while (std::next_permutation(perm.begin(), perm.end()));
          if (seen.insert(best).second) out.push_back(graph_from_pairs(n, best));
        }
        std::size_t i = m;
        while (i > 0 && pick[i - 1] == slots.size() - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < m; ++j) pick[j] = pick[i - 1];
      }
    }
  }
  return out;
}

inline bool subset_of(const MetricGraph& g, const Subset& a, const Subset& b) {
  return set_intersection(g, a, b) == a;
}

}  // namespace chord::test
