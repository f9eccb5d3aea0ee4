#pragma once

// Zero-integral connected subsets of prescribed measure: the double-cover
// solver for r in [0,1], the Euler-circuit solver for every r in [0,|E|],
// and a sampling harness for chord-set membership.

#include <cstdint>
#include <random>
#include <vector>

#include "chord/double_cover.hpp"
#include "chord/metric_graph.hpp"
#include "chord/step_function.hpp"

namespace chord {

/// f pulled back along the walk: a step function on [0, n] whose unit
/// interval [i, i+1] is step i, read in its direction of travel.
[[nodiscard]] Step1D lift(const StepFunction& f, const ClosedPath& walk);

/// Image of the circle arc [x, x + w] (circumference n = walk length) under
/// the walk map. 0 <= x < n, 0 <= w <= n.
[[nodiscard]] Subset walk_window(const MetricGraph& g, const ClosedPath& walk, const Rational& x,
                                 const Rational& w);

/// Window of measure r on the semi-simple path c whose integral is
/// (r/n) times the path integral of f. r = 0 gives the start vertex.
/// Throws PreconditionError for r outside [0,1] or a path that is not
/// semi-simple.
[[nodiscard]] ConnSubset arc_on_semi_simple(const MetricGraph& g, const ClosedPath& c,
                                            const StepFunction& f, const Rational& r);

struct ChordSolution {
  ConnSubset set;
  Rational measure;
  Rational integral;
  /// Double cover, or the single Euler circuit.
  std::vector<ClosedPath> cover;
  /// Time along the connecting curve at which the zero was found; 0 when a
  /// window already had integral zero.
  Rational schedule_time;
};

/// U connected, closed, mu(U) = r, I_f(U) = 0, for G of minimum degree >= 2,
/// f of total integral 0 and r in [0,1].
[[nodiscard]] ChordSolution graph_chord_solve(const MetricGraph& g, const StepFunction& f,
                                              const Rational& r);

/// Same postcondition for an Euler graph and any r in [0,|E|].
[[nodiscard]] ChordSolution euler_chord_solve(const MetricGraph& g, const StepFunction& f,
                                              const Rational& r);

/// Random step function with total integral 0. Breakpoints are multiples of
/// 1/denominator and values are integers in [-amplitude, amplitude] shifted
/// by the mean.
[[nodiscard]] StepFunction random_zero_mean(const MetricGraph& g, std::mt19937_64& rng,
                                            unsigned denominator = 4, int amplitude = 5);

/// Minimum and maximum of I_f over connected unions of grid cells of length
/// 1/q with total measure r. Returns nothing when r*q is not an integer, no
/// such union exists, or more than `budget` unions would be visited. Since
/// measure-r connected sets form a path-connected space for 0 < r < |E|,
/// lo <= 0 <= hi already implies a zero there.
struct GridRange {
  Rational lo;
  Rational hi;
  bool exact_zero = false;
  std::size_t visited = 0;
};
[[nodiscard]] std::optional<GridRange> grid_integral_range(const MetricGraph& g,
                                                           const StepFunction& f,
                                                           const Rational& r, unsigned q,
                                                           std::size_t budget = 2'000'000);

struct EvidenceReport {
  enum class Method { euler_solver, double_cover_solver, grid_search };
  Method method = Method::grid_search;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  /// Grid search ran out of budget or the grid did not fit r.
  std::size_t inconclusive = 0;
  std::vector<std::uint64_t> failing_seeds;
};

/// Tries `trials` random zero-mean functions at measure r. Uses the Euler or
/// double-cover solver when the graph and r are in their range, otherwise a
/// grid search, where a failure means only that no grid union hits zero.
[[nodiscard]] EvidenceReport chord_membership_evidence(const MetricGraph& g, const Rational& r,
                                                       std::size_t trials, std::uint64_t seed);

}  // namespace chord
