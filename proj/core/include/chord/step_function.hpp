#pragma once

// Exact-rational step functions: on a single interval [0, L] (Step1D) and
// on every edge of a metric graph (StepFunction). Values at breakpoints are
// irrelevant; pieces are treated as half-open with the last one closed.

#include <span>
#include <vector>

#include "chord/metric_graph.hpp"

namespace chord {

struct StepPiece {
  Rational from;
  Rational to;
  Rational value;

  friend bool operator==(const StepPiece&, const StepPiece&) = default;
};

class Step1D {
 public:
  Step1D() : Step1D(1, 0) {}
  /// Constant function on [0, length].
  Step1D(Rational length, Rational value);
  /// Pieces must be contiguous, strictly increasing and start at 0; the
  /// domain is [0, last.to]. Throws PreconditionError otherwise.
  explicit Step1D(std::span<const StepPiece> pieces);

  [[nodiscard]] const Rational& length() const { return breaks_.back(); }
  /// Strictly increasing, front() == 0, back() == length().
  [[nodiscard]] const std::vector<Rational>& breakpoints() const { return breaks_; }
  [[nodiscard]] const std::vector<Rational>& values() const { return values_; }
  [[nodiscard]] std::vector<StepPiece> pieces() const;

  /// Value on the piece containing x (the right piece at a breakpoint).
  [[nodiscard]] const Rational& value_at(const Rational& x) const;
  /// Integral over [0, x], 0 <= x <= length().
  [[nodiscard]] Rational prefix(const Rational& x) const;
  /// Integral over [a, b] with 0 <= a <= b <= length().
  [[nodiscard]] Rational integral(const Rational& a, const Rational& b) const;
  [[nodiscard]] Rational total() const { return cumulative_.back(); }
  [[nodiscard]] Rational max_abs() const;

  [[nodiscard]] Step1D reversed() const;
  /// This function followed by `next`, shifted to start at length().
  [[nodiscard]] Step1D concat(const Step1D& next) const;

 private:
  std::size_t piece_index(const Rational& x) const;

  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
  std::vector<Rational> cumulative_;  // prefix at each breakpoint
};

/// A step function on every edge of a graph; each edge function lives on
/// [0, 1] in the edge's own parametrisation.
class StepFunction {
 public:
  StepFunction() = default;
  static StepFunction constant(const MetricGraph& g, const Rational& value);
  /// Throws PreconditionError unless there is one unit-length Step1D per edge.
  StepFunction(const MetricGraph& g, std::vector<Step1D> per_edge);

  [[nodiscard]] const Step1D& on(EdgeIndex e) const { return per_edge_.at(e); }
  [[nodiscard]] std::size_t edge_count() const { return per_edge_.size(); }
  [[nodiscard]] Rational max_abs() const;

 private:
  std::vector<Step1D> per_edge_;
};

/// alpha * f + beta * g on a common refinement.
[[nodiscard]] Step1D combine(const Rational& alpha, const Step1D& f, const Rational& beta,
                             const Step1D& g);
[[nodiscard]] StepFunction combine(const MetricGraph& graph, const Rational& alpha,
                                   const StepFunction& f, const Rational& beta,
                                   const StepFunction& g);

[[nodiscard]] Rational integral_graph(const StepFunction& f);
/// I_f(U): integral of f over a closed subset.
[[nodiscard]] Rational integral_subset(const StepFunction& f, const Subset& u);
/// Sum of whole-edge integrals along a walk, with multiplicity.
[[nodiscard]] Rational integral_path(const StepFunction& f, std::span<const Traversal> walk);

/// f read along a traversal: the edge function, reversed when walked backwards.
[[nodiscard]] Step1D along(const StepFunction& f, const Traversal& step);

}  // namespace chord
