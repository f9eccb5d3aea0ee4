#pragma once

// Closed walks, semi-simple closed paths, double covers and Euler circuits.

#include <functional>
#include <span>
#include <vector>

#include "chord/metric_graph.hpp"

namespace chord {

struct ClosedPath {
  std::vector<Traversal> steps;

  [[nodiscard]] std::size_t length() const { return steps.size(); }
  friend bool operator==(const ClosedPath&, const ClosedPath&) = default;
};

struct DoubleCover {
  std::vector<ClosedPath> paths;
};

[[nodiscard]] VertexId start_vertex(const MetricGraph& g, const Traversal& step);
[[nodiscard]] VertexId end_vertex(const MetricGraph& g, const Traversal& step);
[[nodiscard]] ClosedPath reversed(const ClosedPath& path);

/// Nonempty, consecutive steps chain up, and the last step returns to the start.
[[nodiscard]] bool is_closed_walk(const MetricGraph& g, const ClosedPath& path);

/// Closed walk in which no edge is immediately repeated (cyclically, so the
/// last and first steps count as consecutive) and no edge appears more than
/// twice. A single step has no consecutive pair, so one loop traversed once
/// is semi-simple.
[[nodiscard]] bool is_semi_simple(const MetricGraph& g, const ClosedPath& path);

/// Every path semi-simple and every edge used exactly twice overall.
[[nodiscard]] bool verify_double_cover(const MetricGraph& g, std::span<const ClosedPath> cover);

/// Per-edge multiplicity across a collection of walks.
[[nodiscard]] std::vector<std::size_t> edge_multiplicity(const MetricGraph& g,
                                                         std::span<const ClosedPath> cover);

/// One step of the covering construction, reported to an optional observer.
struct CoverStep {
  enum class Kind { seed_cycle, residual_cycle, merge_hosts, split_host };
  Kind kind = Kind::seed_cycle;
  /// The new cycle, or the maximal residual path alpha oriented u -> v.
  ClosedPath added;
  VertexId u = 0;
  VertexId v = 0;
  /// Residual degrees of u and v just before alpha was removed from the residual.
  std::size_t residual_degree_u = 0;
  std::size_t residual_degree_v = 0;
  bool u_covered = false;
  bool v_covered = false;
};

using CoverObserver =
    std::function<void(const CoverStep&, const DoubleCover& working, const std::vector<char>& covered)>;

/// Double cover of a connected graph with minimum degree >= 2 by semi-simple
/// closed paths. Grows a covered subgraph K from a doubled seed cycle: a
/// cycle left in the residual graph is added as two copies; otherwise a
/// maximal residual path alpha between vertices u, v of K is spliced into
/// the host paths through u and v. Deterministic: lowest edge index first.
/// Throws PreconditionError when some vertex has degree < 2.
[[nodiscard]] DoubleCover compute_double_cover(const MetricGraph& g,
                                               const CoverObserver& observer = {});

/// Hierholzer circuit using every edge once. Throws PreconditionError when a
/// vertex has odd degree.
[[nodiscard]] ClosedPath euler_circuit(const MetricGraph& g);

}  // namespace chord
