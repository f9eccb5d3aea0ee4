#include "chord/double_cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>

namespace chord {

namespace {

Traversal leaving(const Incidence& inc) { return {inc.edge, inc.end == 0}; }

std::optional<ClosedPath> forest_path(const MetricGraph& g, const std::vector<EdgeIndex>& forest,
                                      VertexId from, VertexId to) {
  std::vector<std::vector<Incidence>> adj(g.vertex_count());
  for (EdgeIndex e : forest) {
    adj[g.edge(e).tail].push_back({e, 0});
    adj[g.edge(e).head].push_back({e, 1});
  }
  std::vector<std::optional<Traversal>> via(g.vertex_count());
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<VertexId> queue = {from};
  seen[from] = 1;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    for (const auto& inc : adj[x]) {
      const Traversal t = leaving(inc);
      const VertexId y = end_vertex(g, t);
      if (seen[y]) continue;
      seen[y] = 1;
      via[y] = t;
      queue.push_back(y);
    }
  }
  if (!seen[to]) return std::nullopt;
  ClosedPath out;
  for (VertexId y = to; y != from; y = start_vertex(g, *via[y])) out.steps.push_back(*via[y]);
  std::reverse(out.steps.begin(), out.steps.end());
  return out;
}

// First simple cycle among the residual edges, scanning edges in index order.
std::optional<ClosedPath> find_cycle(const MetricGraph& g, const std::vector<char>& residual) {
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<EdgeIndex> forest;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (!residual[e]) continue;
    const Edge& edge = g.edge(e);
    if (edge.is_loop()) return ClosedPath{{{e, true}}};
    if (find(edge.tail) == find(edge.head)) {
      auto back = forest_path(g, forest, edge.head, edge.tail);
      ClosedPath cycle{{{e, true}}};
      cycle.steps.insert(cycle.steps.end(), back->steps.begin(), back->steps.end());
      // Start at the lowest edge so a cycle has one spelling.
      auto low = std::min_element(cycle.steps.begin(), cycle.steps.end(),
                                  [](const Traversal& a, const Traversal& b) { return a.edge < b.edge; });
      std::rotate(cycle.steps.begin(), low, cycle.steps.end());
      return cycle;
    }
    parent[find(edge.tail)] = find(edge.head);
    forest.push_back(e);
  }
  return std::nullopt;
}

std::size_t residual_degree(const MetricGraph& g, const std::vector<char>& residual, VertexId v) {
  return static_cast<std::size_t>(std::count_if(g.incidences(v).begin(), g.incidences(v).end(),
                                                [&](const Incidence& i) { return residual[i.edge]; }));
}

// Maximal simple path in a residual forest, grown from its lowest edge.
ClosedPath maximal_residual_path(const MetricGraph& g, const std::vector<char>& residual) {
  const auto first = std::find(residual.begin(), residual.end(), 1);
  const EdgeIndex e0 = static_cast<EdgeIndex>(first - residual.begin());
  std::deque<Traversal> path = {{e0, true}};
  std::vector<char> used(g.edge_count(), 0);
  used[e0] = 1;
  auto next_from = [&](VertexId x) -> std::optional<Traversal> {
    for (const auto& inc : g.incidences(x)) {
      if (residual[inc.edge] && !used[inc.edge]) return leaving(inc);
    }
    return std::nullopt;
  };
  while (auto t = next_from(end_vertex(g, path.back()))) {
    used[t->edge] = 1;
    path.push_back(*t);
  }
  while (auto t = next_from(start_vertex(g, path.front()))) {
    used[t->edge] = 1;
    path.push_front({t->edge, !t->forward});
  }
  return ClosedPath{{path.begin(), path.end()}};
}

bool visits(const MetricGraph& g, const ClosedPath& p, VertexId v) {
  return std::any_of(p.steps.begin(), p.steps.end(),
                     [&](const Traversal& t) { return start_vertex(g, t) == v; });
}

ClosedPath rotate_to(const MetricGraph& g, const ClosedPath& p, VertexId v) {
  auto it = std::find_if(p.steps.begin(), p.steps.end(),
                         [&](const Traversal& t) { return start_vertex(g, t) == v; });
  ClosedPath out;
  out.steps.assign(it, p.steps.end());
  out.steps.insert(out.steps.end(), p.steps.begin(), it);
  return out;
}

void append(ClosedPath& dst, const ClosedPath& src) {
  dst.steps.insert(dst.steps.end(), src.steps.begin(), src.steps.end());
}

}  // namespace

VertexId start_vertex(const MetricGraph& g, const Traversal& step) {
  return step.forward ? g.edge(step.edge).tail : g.edge(step.edge).head;
}

VertexId end_vertex(const MetricGraph& g, const Traversal& step) {
  return step.forward ? g.edge(step.edge).head : g.edge(step.edge).tail;
}

ClosedPath reversed(const ClosedPath& path) {
  ClosedPath out;
  for (auto it = path.steps.rbegin(); it != path.steps.rend(); ++it) {
    out.steps.push_back({it->edge, !it->forward});
  }
  return out;
}

bool is_closed_walk(const MetricGraph& g, const ClosedPath& path) {
  const std::size_t n = path.steps.size();
  if (n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (path.steps[i].edge >= g.edge_count()) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (end_vertex(g, path.steps[i]) != start_vertex(g, path.steps[(i + 1) % n])) return false;
  }
  return true;
}

bool is_semi_simple(const MetricGraph& g, const ClosedPath& path) {
  if (!is_closed_walk(g, path)) return false;
  const std::size_t n = path.steps.size();
  std::vector<std::size_t> count(g.edge_count(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (++count[path.steps[i].edge] > 2) return false;
    if (n > 1 && path.steps[i].edge == path.steps[(i + 1) % n].edge) return false;
  }
  return true;
}

std::vector<std::size_t> edge_multiplicity(const MetricGraph& g, std::span<const ClosedPath> cover) {
  std::vector<std::size_t> count(g.edge_count(), 0);
  for (const auto& p : cover) {
    for (const auto& t : p.steps) {
      if (t.edge < count.size()) ++count[t.edge];
    }
  }
  return count;
}

bool verify_double_cover(const MetricGraph& g, std::span<const ClosedPath> cover) {
  if (!std::all_of(cover.begin(), cover.end(), [&](const ClosedPath& p) { return is_semi_simple(g, p); })) {
    return false;
  }
  const auto count = edge_multiplicity(g, cover);
  return std::all_of(count.begin(), count.end(), [](std::size_t c) { return c == 2; });
}

DoubleCover compute_double_cover(const MetricGraph& g, const CoverObserver& observer) {
  if (g.min_degree() < 2) throw PreconditionError("double cover needs every vertex of degree >= 2");
  DoubleCover cover;
  std::vector<char> residual(g.edge_count(), 1);
  std::vector<char> covered(g.edge_count(), 0);
  bool seeded = false;

  auto take = [&](const ClosedPath& p) {
    for (const auto& t : p.steps) {
      residual[t.edge] = 0;
      covered[t.edge] = 1;
    }
  };

  while (std::find(residual.begin(), residual.end(), 1) != residual.end()) {
    CoverStep step;
    if (auto cycle = find_cycle(g, residual)) {
      step.kind = seeded ? CoverStep::Kind::residual_cycle : CoverStep::Kind::seed_cycle;
      seeded = true;
      cover.paths.push_back(*cycle);
      cover.paths.push_back(*cycle);
      take(*cycle);
      step.added = std::move(*cycle);
    } else {
      if (!seeded) throw InternalError("graph of minimum degree 2 without a cycle");
      // The residual is a forest; alpha's ends have residual degree 1 and so
      // touch covered edges.
      ClosedPath alpha = maximal_residual_path(g, residual);
      const VertexId u = start_vertex(g, alpha.steps.front());
      const VertexId v = end_vertex(g, alpha.steps.back());
      step.u = u;
      step.v = v;
      step.residual_degree_u = residual_degree(g, residual, u);
      step.residual_degree_v = residual_degree(g, residual, v);
      auto host_of = [&](VertexId x) {
        auto it = std::find_if(cover.paths.begin(), cover.paths.end(),
                               [&](const ClosedPath& p) { return visits(g, p, x); });
        return static_cast<std::size_t>(it - cover.paths.begin());
      };
      const std::size_t hu = host_of(u);
      const std::size_t hv = host_of(v);
      step.u_covered = hu < cover.paths.size();
      step.v_covered = hv < cover.paths.size();
      if (!step.u_covered || !step.v_covered || u == v) {
        throw InternalError("residual path endpoint outside the covered subgraph");
      }
      const ClosedPath back = reversed(alpha);
      ClosedPath spliced;
      if (hu != hv) {
        // gamma . alpha . eta . reverse(alpha)
        step.kind = CoverStep::Kind::merge_hosts;
        spliced = rotate_to(g, cover.paths[hu], u);
        append(spliced, alpha);
        append(spliced, rotate_to(g, cover.paths[hv], v));
        append(spliced, back);
        cover.paths[hu] = std::move(spliced);
        cover.paths.erase(cover.paths.begin() + static_cast<long>(hv));
      } else {
        // gamma = d1 (u -> v) . d2 (v -> u)  becomes  d1 . rev(alpha) . rev(d2) . rev(alpha)
        step.kind = CoverStep::Kind::split_host;
        const ClosedPath gamma = rotate_to(g, cover.paths[hu], u);
        auto mid = std::find_if(gamma.steps.begin() + 1, gamma.steps.end(),
                                [&](const Traversal& t) { return start_vertex(g, t) == v; });
        ClosedPath d1{{gamma.steps.begin(), mid}};
        ClosedPath d2{{mid, gamma.steps.end()}};
        spliced = d1;
        append(spliced, back);
        append(spliced, reversed(d2));
        append(spliced, back);
        cover.paths[hu] = std::move(spliced);
      }
      take(alpha);
      step.added = std::move(alpha);
    }
    if (observer) observer(step, cover, covered);
  }
  return cover;
}

ClosedPath euler_circuit(const MetricGraph& g) {
  if (!g.is_euler()) throw PreconditionError("graph has a vertex of odd degree; no Euler circuit");
  std::vector<char> used(g.edge_count(), 0);
  std::vector<std::size_t> next(g.vertex_count(), 0);
  std::vector<std::pair<VertexId, std::optional<Traversal>>> stack = {{g.edge(0).tail, std::nullopt}};
  ClosedPath circuit;
  while (!stack.empty()) {
    const VertexId v = stack.back().first;
    const auto& inc = g.incidences(v);
    while (next[v] < inc.size() && used[inc[next[v]].edge]) ++next[v];
    if (next[v] < inc.size()) {
      const Traversal t = leaving(inc[next[v]]);
      used[t.edge] = 1;
      stack.emplace_back(end_vertex(g, t), t);
    } else {
      if (stack.back().second) circuit.steps.push_back(*stack.back().second);
      stack.pop_back();
    }
  }
  std::reverse(circuit.steps.begin(), circuit.steps.end());
  return circuit;
}

}  // namespace chord
