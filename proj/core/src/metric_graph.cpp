#include "chord/metric_graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace chord {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Sort and merge closed intervals that overlap or touch.
std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
  });
  std::vector<Interval> out;
  for (auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = iv.hi;
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

bool touches_end(const std::vector<Interval>& trace, int end) {
  if (trace.empty()) return false;
  return end == 0 ? trace.front().lo == 0 : trace.back().hi == 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// MetricGraph

MetricGraph::MetricGraph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges)
    : vertices_(std::move(vertices)) {
  std::map<std::string, VertexId, std::less<>> by_name;
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (!by_name.emplace(vertices_[v], v).second) {
      throw PreconditionError("duplicate vertex '" + vertices_[v] + "'");
    }
  }
  if (edges.empty()) throw PreconditionError("graph has no edges");
  std::sort(edges.begin(), edges.end(),
            [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i].id == edges[i - 1].id) {
      throw PreconditionError("duplicate edge '" + edges[i].id + "'");
    }
    auto tail = by_name.find(edges[i].tail);
    auto head = by_name.find(edges[i].head);
    if (tail == by_name.end() || head == by_name.end()) {
      throw PreconditionError("edge '" + edges[i].id + "' has an undeclared endpoint");
    }
    edges_.push_back({edges[i].id, tail->second, head->second});
  }
  incidences_.resize(vertices_.size());
  DisjointSets ds(vertices_.size());
  for (EdgeIndex e = 0; e < edges_.size(); ++e) {
    incidences_[edges_[e].tail].push_back({e, 0});
    incidences_[edges_[e].head].push_back({e, 1});
    ds.unite(edges_[e].tail, edges_[e].head);
  }
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (ds.find(v) != ds.find(0)) throw PreconditionError("graph is not connected");
  }
}

std::optional<EdgeIndex> MetricGraph::find_edge(std::string_view id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, std::string_view s) { return e.id < s; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<EdgeIndex>(it - edges_.begin());
}

std::optional<VertexId> MetricGraph::find_vertex(std::string_view name) const {
  auto it = std::find(vertices_.begin(), vertices_.end(), name);
  if (it == vertices_.end()) return std::nullopt;
  return static_cast<VertexId>(it - vertices_.begin());
}

EdgeIndex MetricGraph::edge_index(std::string_view id) const {
  auto e = find_edge(id);
  if (!e) throw PreconditionError("unknown edge '" + std::string(id) + "'");
  return *e;
}

std::size_t MetricGraph::min_degree() const {
  std::size_t m = incidences_.front().size();
  for (const auto& inc : incidences_) m = std::min(m, inc.size());
  return m;
}

bool MetricGraph::is_euler() const {
  return std::all_of(incidences_.begin(), incidences_.end(),
                     [](const auto& inc) { return inc.size() % 2 == 0; });
}

std::optional<VertexId> MetricGraph::vertex_at(const GraphPoint& p) const {
  if (p.t == 0) return edges_.at(p.edge).tail;
  if (p.t == 1) return edges_.at(p.edge).head;
  return std::nullopt;
}

GraphPoint MetricGraph::vertex_point(VertexId v) const {
  const Incidence inc = incidences_.at(v).front();
  return {inc.edge, Rational(inc.end)};
}

GraphPoint MetricGraph::canonical(GraphPoint p) const {
  if (p.edge >= edges_.size()) throw PreconditionError("point on unknown edge");
  if (p.t < 0 || p.t > 1) throw PreconditionError("point offset outside [0,1]");
  if (auto v = vertex_at(p)) return vertex_point(*v);
  return p;
}

// ---------------------------------------------------------------------------
// Subset

Subset Subset::empty(const MetricGraph& g) {
  Subset s;
  s.traces_.resize(g.edge_count());
  return s;
}

Subset Subset::whole(const MetricGraph& g) {
  Subset s = empty(g);
  for (auto& t : s.traces_) t.push_back({0, 1});
  return s;
}

Subset Subset::point(const MetricGraph& g, const GraphPoint& p) {
  const GraphPoint c = g.canonical(p);
  Subset s = empty(g);
  s.traces_[c.edge].push_back({c.t, c.t});
  return s;
}

Subset Subset::from_segments(const MetricGraph& g, std::span<const EdgeSegment> segments) {
  std::vector<std::vector<Interval>> traces(g.edge_count());
  for (const auto& seg : segments) {
    if (seg.edge >= g.edge_count()) throw PreconditionError("segment on unknown edge");
    if (seg.lo < 0 || seg.hi > 1 || seg.lo > seg.hi) {
      throw PreconditionError("segment must satisfy 0 <= lo <= hi <= 1");
    }
    traces[seg.edge].push_back({seg.lo, seg.hi});
  }
  return from_traces(g, std::move(traces));
}

Subset Subset::from_traces(const MetricGraph& g, std::vector<std::vector<Interval>> traces) {
  if (traces.size() != g.edge_count()) throw PreconditionError("trace count mismatch");
  for (auto& t : traces) t = merge_intervals(std::move(t));

  // A vertex is "solidly" present when a nondegenerate segment touches it;
  // degenerate segments sitting on vertices are then redundant.
  std::vector<char> solid(g.vertex_count(), 0);
  std::vector<char> present(g.vertex_count(), 0);
  for (EdgeIndex e = 0; e < traces.size(); ++e) {
    for (const auto& iv : traces[e]) {
      const bool degenerate = iv.lo == iv.hi;
      if (iv.lo == 0) (degenerate ? present : solid)[g.edge(e).tail] = 1;
      if (iv.hi == 1) (degenerate ? present : solid)[g.edge(e).head] = 1;
    }
  }
  for (auto& t : traces) {
    std::erase_if(t, [](const Interval& iv) { return iv.lo == iv.hi && (iv.lo == 0 || iv.lo == 1); });
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (present[v] && !solid[v]) {
      const GraphPoint p = g.vertex_point(v);
      auto& t = traces[p.edge];
      t.push_back({p.t, p.t});
      t = merge_intervals(std::move(t));
    }
  }
  Subset s;
  s.traces_ = std::move(traces);
  return s;
}

bool Subset::is_empty() const {
  return std::all_of(traces_.begin(), traces_.end(), [](const auto& t) { return t.empty(); });
}

std::vector<EdgeSegment> Subset::segments() const {
  std::vector<EdgeSegment> out;
  for (EdgeIndex e = 0; e < traces_.size(); ++e) {
    for (const auto& iv : traces_[e]) out.push_back({e, iv.lo, iv.hi});
  }
  return out;
}

bool Subset::contains_vertex(const MetricGraph& g, VertexId v) const {
  return std::any_of(g.incidences(v).begin(), g.incidences(v).end(),
                     [&](const Incidence& inc) { return touches_end(traces_[inc.edge], inc.end); });
}

bool Subset::contains(const MetricGraph& g, const GraphPoint& p) const {
  if (auto v = g.vertex_at(p)) return contains_vertex(g, *v);
  return std::any_of(traces_.at(p.edge).begin(), traces_.at(p.edge).end(),
                     [&](const Interval& iv) { return iv.lo <= p.t && p.t <= iv.hi; });
}

ConnSubset ConnSubset::make(const MetricGraph& g, Subset set) {
  if (set.edge_count() != g.edge_count()) throw PreconditionError("subset/graph mismatch");
  if (!is_connected(g, set)) throw PreconditionError("subset is empty or not connected");
  return ConnSubset(std::move(set));
}

ConnSubset ConnSubset::from_segments(const MetricGraph& g, std::span<const EdgeSegment> segments) {
  return make(g, Subset::from_segments(g, segments));
}

ConnSubset ConnSubset::point(const MetricGraph& g, const GraphPoint& p) {
  return ConnSubset(Subset::point(g, p));
}

ConnSubset ConnSubset::whole(const MetricGraph& g) { return ConnSubset(Subset::whole(g)); }

// ---------------------------------------------------------------------------
// Measure and topology

Rational measure(const Subset& s) {
  Rational total = 0;
  for (const auto& t : s.traces()) {
    for (const auto& iv : t) total += iv.length();
  }
  return total;
}

bool is_connected(const MetricGraph& g, const Subset& s) {
  // Contact graph: nodes 0..V-1 are vertices, then one node per segment.
  std::vector<std::pair<EdgeIndex, std::size_t>> seg_nodes;
  for (EdgeIndex e = 0; e < s.edge_count(); ++e) {
    for (std::size_t i = 0; i < s.trace(e).size(); ++i) seg_nodes.emplace_back(e, i);
  }
  if (seg_nodes.empty()) return false;
  const std::size_t nv = g.vertex_count();
  DisjointSets ds(nv + seg_nodes.size());
  for (std::size_t k = 0; k < seg_nodes.size(); ++k) {
    const auto [e, i] = seg_nodes[k];
    const Interval& iv = s.trace(e)[i];
    if (iv.lo == 0) ds.unite(nv + k, g.edge(e).tail);
    if (iv.hi == 1) ds.unite(nv + k, g.edge(e).head);
  }
  const std::size_t root = ds.find(nv);
  for (std::size_t k = 1; k < seg_nodes.size(); ++k) {
    if (ds.find(nv + k) != root) return false;
  }
  return true;
}

Subset set_union(const MetricGraph& g, const Subset& a, const Subset& b) {
  auto traces = a.traces();
  for (EdgeIndex e = 0; e < traces.size(); ++e) {
    traces[e].insert(traces[e].end(), b.trace(e).begin(), b.trace(e).end());
  }
  return Subset::from_traces(g, std::move(traces));
}

Subset set_intersection(const MetricGraph& g, const Subset& a, const Subset& b) {
  std::vector<std::vector<Interval>> traces(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (const auto& x : a.trace(e)) {
      for (const auto& y : b.trace(e)) {
        Rational lo = max(x.lo, y.lo);
        Rational hi = min(x.hi, y.hi);
        if (lo <= hi) traces[e].push_back({std::move(lo), std::move(hi)});
      }
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (a.contains_vertex(g, v) && b.contains_vertex(g, v)) {
      const GraphPoint p = g.vertex_point(v);
      traces[p.edge].push_back({p.t, p.t});
    }
  }
  return Subset::from_traces(g, std::move(traces));
}

bool intersects(const MetricGraph& g, const Subset& a, const Subset& b) {
  return !set_intersection(g, a, b).is_empty();
}

// ---------------------------------------------------------------------------
// Geodesics

namespace {

struct Predecessor {
  bool from_source = true;
  VertexId prev = 0;
  std::optional<PathPiece> piece;  // piece ending at this vertex
};

struct SourceDistances {
  std::vector<std::optional<Rational>> dist;
  std::vector<Predecessor> pred;
};

void offer(SourceDistances& sd, VertexId v, Rational d, Predecessor p) {
  if (!sd.dist[v] || d < *sd.dist[v]) {
    sd.dist[v] = std::move(d);
    sd.pred[v] = std::move(p);
  }
}

SourceDistances distances_from(const MetricGraph& g, const Subset& a) {
  SourceDistances sd;
  sd.dist.resize(g.vertex_count());
  sd.pred.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (a.contains_vertex(g, v)) offer(sd, v, 0, {});
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& t = a.trace(e);
    if (t.empty()) continue;
    const Edge& edge = g.edge(e);
    offer(sd, edge.tail, t.front().lo, {true, 0, PathPiece{e, t.front().lo, 0}});
    offer(sd, edge.head, 1 - t.back().hi, {true, 0, PathPiece{e, t.back().hi, 1}});
  }
  // Dense Dijkstra; graphs here are desk scale.
  std::vector<char> done(g.vertex_count(), 0);
  for (;;) {
    std::optional<VertexId> best;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (!done[v] && sd.dist[v] && (!best || *sd.dist[v] < *sd.dist[*best])) best = v;
    }
    if (!best) break;
    const VertexId u = *best;
    done[u] = 1;
    for (const Incidence& inc : g.incidences(u)) {
      const Edge& edge = g.edge(inc.edge);
      if (edge.is_loop()) continue;
      const VertexId w = inc.end == 0 ? edge.head : edge.tail;
      if (done[w]) continue;
      offer(sd, w, *sd.dist[u] + 1,
            {false, u, PathPiece{inc.edge, Rational(inc.end), Rational(1 - inc.end)}});
    }
  }
  return sd;
}

std::vector<PathPiece> trace_back(const SourceDistances& sd, VertexId v) {
  std::vector<PathPiece> rev;
  for (;;) {
    const Predecessor& p = sd.pred[v];
    if (p.piece && p.piece->from != p.piece->to) rev.push_back(*p.piece);
    if (p.from_source) break;
    v = p.prev;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

struct Landing {
  Rational dist;
  GraphPoint at;
  std::vector<PathPiece> path;
};

bool better(const Landing& x, const Landing& y) {
  if (x.dist != y.dist) return x.dist < y.dist;
  if (x.at.edge != y.at.edge) return x.at.edge < y.at.edge;
  return x.at.t < y.at.t;
}

}  // namespace

std::vector<PathPiece> geodesic(const MetricGraph& g, const Subset& a, const Subset& b) {
  if (a.is_empty() || b.is_empty()) throw PreconditionError("geodesic needs nonempty sets");
  if (intersects(g, a, b)) return {};
  const SourceDistances sd = distances_from(g, a);
  std::optional<Landing> best;
  auto consider = [&](Landing cand) {
    cand.at = g.canonical(cand.at);
    if (!best || better(cand, *best)) best = std::move(cand);
  };
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (sd.dist[v] && b.contains_vertex(g, v)) {
      consider({*sd.dist[v], g.vertex_point(v), trace_back(sd, v)});
    }
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    for (const auto& y : b.trace(e)) {
      if (sd.dist[edge.tail]) {
        auto path = trace_back(sd, edge.tail);
        if (y.lo > 0) path.push_back({e, 0, y.lo});
        consider({*sd.dist[edge.tail] + y.lo, {e, y.lo}, std::move(path)});
      }
      if (sd.dist[edge.head]) {
        auto path = trace_back(sd, edge.head);
        if (y.hi < 1) path.push_back({e, 1, y.hi});
        consider({*sd.dist[edge.head] + (1 - y.hi), {e, y.hi}, std::move(path)});
      }
      for (const auto& x : a.trace(e)) {
        if (x.hi < y.lo) consider({y.lo - x.hi, {e, y.lo}, {PathPiece{e, x.hi, y.lo}}});
        if (y.hi < x.lo) consider({x.lo - y.hi, {e, y.hi}, {PathPiece{e, x.lo, y.hi}}});
      }
    }
  }
  if (!best) throw InternalError("no path between subsets of a connected graph");
  return best->path;
}

Rational set_distance(const MetricGraph& g, const Subset& a, const Subset& b) {
  Rational total = 0;
  for (const auto& p : geodesic(g, a, b)) total += p.length();
  return total;
}

Rational point_distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q) {
  return set_distance(g, Subset::point(g, p), Subset::point(g, q));
}

ConnSubset hull(const MetricGraph& g, const ConnSubset& a, const ConnSubset& b) {
  auto traces = set_union(g, a, b).traces();
  for (const auto& piece : geodesic(g, a, b)) {
    traces[piece.edge].push_back({min(piece.from, piece.to), max(piece.from, piece.to)});
  }
  return ConnSubset::make(g, Subset::from_traces(g, std::move(traces)));
}

Rational metric_d(const MetricGraph& g, const ConnSubset& a, const ConnSubset& b) {
  return measure(hull(g, a, b)) - measure(set_intersection(g, a, b));
}

Rational metric_d_xr(const MetricGraph& g, const ConnSubset& a, const ConnSubset& b,
                     const Rational& r) {
  if (measure(a) != r || measure(b) != r) {
    throw PreconditionError("metric_d_xr requires both sets to have measure r");
  }
  return 2 * r - 2 * measure(set_intersection(g, a, b));
}

}  // namespace chord
