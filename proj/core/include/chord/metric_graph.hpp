#pragma once

// Metric graphs: finite multigraphs (loops and parallel edges allowed) whose
// edges are unit intervals. Closed subsets are stored as per-edge traces,
// i.e. finite unions of closed segments of [0,1], in a canonical form in which
// every vertex has at most one representation.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chord/rational.hpp"

namespace chord {

using VertexId = std::size_t;
using EdgeIndex = std::size_t;

struct EdgeSpec {
  std::string id;
  std::string tail;
  std::string head;
};

/// Edge parametrised by t in [0,1]; t = 0 is `tail`, t = 1 is `head`.
struct Edge {
  std::string id;
  VertexId tail = 0;
  VertexId head = 0;

  [[nodiscard]] bool is_loop() const { return tail == head; }
};

/// A vertex end of an edge: `end` is 0 (t = 0) or 1 (t = 1).
struct Incidence {
  EdgeIndex edge = 0;
  int end = 0;
};

struct GraphPoint {
  EdgeIndex edge = 0;
  Rational t;

  friend bool operator==(const GraphPoint&, const GraphPoint&) = default;
};

class MetricGraph {
 public:
  /// Validates and builds the graph. Edges are stored sorted by identifier,
  /// so edge index order is identifier order. Throws PreconditionError when
  /// identifiers repeat, an endpoint is undeclared, there are no edges, or
  /// the graph is disconnected.
  MetricGraph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

  [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::string& vertex_name(VertexId v) const { return vertices_.at(v); }
  [[nodiscard]] const std::vector<std::string>& vertex_names() const { return vertices_; }

  [[nodiscard]] std::optional<EdgeIndex> find_edge(std::string_view id) const;
  [[nodiscard]] std::optional<VertexId> find_vertex(std::string_view name) const;
  [[nodiscard]] EdgeIndex edge_index(std::string_view id) const;  // throws

  /// Incidences at v ordered by (edge, end). A loop contributes two.
  [[nodiscard]] const std::vector<Incidence>& incidences(VertexId v) const {
    return incidences_.at(v);
  }
  [[nodiscard]] std::size_t degree(VertexId v) const { return incidences_.at(v).size(); }
  [[nodiscard]] std::size_t min_degree() const;
  [[nodiscard]] bool is_euler() const;

  [[nodiscard]] VertexId endpoint(Incidence inc) const {
    return inc.end == 0 ? edges_[inc.edge].tail : edges_[inc.edge].head;
  }

  /// The vertex a point sits on, if t is 0 or 1.
  [[nodiscard]] std::optional<VertexId> vertex_at(const GraphPoint& p) const;
  /// Canonical representation of a vertex as a point: its first incidence.
  [[nodiscard]] GraphPoint vertex_point(VertexId v) const;
  /// Vertex points are rewritten to vertex_point(v), so coincident points
  /// compare equal. Throws PreconditionError when t is outside [0,1].
  [[nodiscard]] GraphPoint canonical(GraphPoint p) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidences_;
};

/// One step of an edge walk. `forward` runs tail -> head.
struct Traversal {
  EdgeIndex edge = 0;
  bool forward = true;

  friend bool operator==(const Traversal&, const Traversal&) = default;
};

struct EdgeSegment {
  EdgeIndex edge = 0;
  Rational lo;
  Rational hi;

  friend bool operator==(const EdgeSegment&, const EdgeSegment&) = default;
};

struct Interval {
  Rational lo;
  Rational hi;

  [[nodiscard]] Rational length() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A closed subset of G with finitely many segments per edge. Always held in
/// canonical form: per-edge intervals sorted, disjoint and non-touching, and
/// each vertex of the set represented exactly once (by a nondegenerate
/// segment touching it, or else by a single degenerate segment at the
/// vertex's canonical incidence).
class Subset {
 public:
  Subset() = default;

  static Subset empty(const MetricGraph& g);
  static Subset whole(const MetricGraph& g);
  static Subset point(const MetricGraph& g, const GraphPoint& p);
  /// Throws PreconditionError on out-of-range or reversed segments.
  static Subset from_segments(const MetricGraph& g, std::span<const EdgeSegment> segments);
  /// Canonicalises arbitrary per-edge traces (overlaps allowed).
  static Subset from_traces(const MetricGraph& g, std::vector<std::vector<Interval>> traces);

  [[nodiscard]] const std::vector<Interval>& trace(EdgeIndex e) const { return traces_.at(e); }
  [[nodiscard]] const std::vector<std::vector<Interval>>& traces() const { return traces_; }
  [[nodiscard]] std::size_t edge_count() const { return traces_.size(); }
  [[nodiscard]] bool is_empty() const;
  [[nodiscard]] std::vector<EdgeSegment> segments() const;

  [[nodiscard]] bool contains_vertex(const MetricGraph& g, VertexId v) const;
  [[nodiscard]] bool contains(const MetricGraph& g, const GraphPoint& p) const;

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<std::vector<Interval>> traces_;
};

/// A nonempty, connected Subset: an element of X(G).
class ConnSubset {
 public:
  /// Throws PreconditionError when `set` is empty or disconnected.
  static ConnSubset make(const MetricGraph& g, Subset set);
  static ConnSubset from_segments(const MetricGraph& g, std::span<const EdgeSegment> segments);
  static ConnSubset point(const MetricGraph& g, const GraphPoint& p);
  static ConnSubset whole(const MetricGraph& g);

  [[nodiscard]] const Subset& set() const { return set_; }
  operator const Subset&() const { return set_; }  // NOLINT(google-explicit-constructor)

  friend bool operator==(const ConnSubset&, const ConnSubset&) = default;

 private:
  explicit ConnSubset(Subset set) : set_(std::move(set)) {}
  Subset set_;
};

[[nodiscard]] Rational measure(const Subset& s);

/// Connectivity of the union with vertex identifications. The empty set is
/// reported as not connected (it is not an element of X(G)).
[[nodiscard]] bool is_connected(const MetricGraph& g, const Subset& s);

[[nodiscard]] Subset set_union(const MetricGraph& g, const Subset& a, const Subset& b);
/// Pointwise intersection, including vertices the two sets share.
[[nodiscard]] Subset set_intersection(const MetricGraph& g, const Subset& a, const Subset& b);
[[nodiscard]] bool intersects(const MetricGraph& g, const Subset& a, const Subset& b);

/// A directed piece of an edge, traversed from `from` to `to`.
struct PathPiece {
  EdgeIndex edge = 0;
  Rational from;
  Rational to;

  [[nodiscard]] Rational length() const { return abs(to - from); }
  friend bool operator==(const PathPiece&, const PathPiece&) = default;
};

/// Shortest path from `a` to `b` as pieces ordered from a outward; empty
/// when the sets meet. Ties break by lowest edge index, then lowest offset,
/// of the point where the path lands on b.
[[nodiscard]] std::vector<PathPiece> geodesic(const MetricGraph& g, const Subset& a,
                                              const Subset& b);

[[nodiscard]] Rational set_distance(const MetricGraph& g, const Subset& a, const Subset& b);
[[nodiscard]] Rational point_distance(const MetricGraph& g, const GraphPoint& p,
                                      const GraphPoint& q);

/// Smallest closed connected set containing a and b: their union plus one
/// geodesic when they are apart.
[[nodiscard]] ConnSubset hull(const MetricGraph& g, const ConnSubset& a, const ConnSubset& b);

/// mu(hull(a, b)) - mu(a n b).
[[nodiscard]] Rational metric_d(const MetricGraph& g, const ConnSubset& a, const ConnSubset& b);

/// 2r - 2 mu(a n b); only defined when mu(a) = mu(b) = r, otherwise throws
/// PreconditionError. Differs from metric_d on disjoint sets.
[[nodiscard]] Rational metric_d_xr(const MetricGraph& g, const ConnSubset& a,
                                   const ConnSubset& b, const Rational& r);

}  // namespace chord
