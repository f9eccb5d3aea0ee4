#pragma once

// Curves in the space of closed connected subsets, discretised as schedules
// of constant-speed tip moves: retractions to a point, measure-preserving
// homotopies between two subsets of equal measure, and exact zero finding
// of the integration functional along a schedule.

#include <optional>
#include <vector>

#include "chord/metric_graph.hpp"
#include "chord/step_function.hpp"

namespace chord {

/// A boundary point of a subset that moves along its edge: dir = +1 towards
/// t = 1, dir = -1 towards t = 0.
struct Tip {
  GraphPoint at;
  int dir = 1;

  friend bool operator==(const Tip&, const Tip&) = default;
};

/// Over `dt` units of time a grow tip adds the closed segment it sweeps and
/// a shrink tip removes the segment it sweeps (the starting point included,
/// the end point kept), after which the set is closed up again. A pair
/// moves both tips at unit speed, so measure is preserved. Moves never run
/// past a vertex.
struct TipMove {
  std::optional<Tip> grow;
  std::optional<Tip> shrink;
  Rational dt;

  enum class Kind { grow, shrink, pair };
  [[nodiscard]] Kind kind() const {
    return grow && shrink ? Kind::pair : (grow ? Kind::grow : Kind::shrink);
  }
  friend bool operator==(const TipMove&, const TipMove&) = default;
};

struct MoveSchedule {
  ConnSubset start;
  std::vector<TipMove> moves;

  [[nodiscard]] Rational duration() const;
};

/// The set after running `move` for `dt` (0 <= dt <= move.dt).
[[nodiscard]] Subset apply_move(const MetricGraph& g, const Subset& s, const TipMove& move,
                                const Rational& dt);

/// The set at time s. Throws PreconditionError for s outside [0, duration].
[[nodiscard]] ConnSubset apply_prefix(const MetricGraph& g, const MoveSchedule& schedule,
                                      const Rational& s);

/// Shrink-only schedule of total duration mu(c) ending at {x}: measure drops
/// at unit rate, the sets are nested and stay connected and contain x.
/// Leaf arcs not ending at x are peeled first; when none remain a non-bridge
/// arc of a cycle is removed.
[[nodiscard]] MoveSchedule retraction_schedule(const MetricGraph& g, const ConnSubset& c,
                                               const GraphPoint& x);

/// Measure-r curve from a to b. While the sets are apart, a geodesic towards
/// b is grown while the current set retracts to the geodesic's foot. Once
/// they share a point x, the current set retracts to x while b is grown back
/// out of x, with sections that are already present passed over at no cost.
/// Requires mu(a) = mu(b) = r and 0 < r < |E|.
[[nodiscard]] MoveSchedule connect_in_xr(const MetricGraph& g, const ConnSubset& a,
                                         const ConnSubset& b, const Rational& r);

/// Splits moves wherever a tip crosses a breakpoint of f, so that I_f is
/// linear in time within every move.
[[nodiscard]] MoveSchedule split_at_breakpoints(const MoveSchedule& schedule,
                                                const StepFunction& f);

struct ProfileKnot {
  Rational time;
  Rational value;
};

/// I_f at every move boundary of the split schedule.
[[nodiscard]] std::vector<ProfileKnot> integral_profile(const MetricGraph& g,
                                                        const StepFunction& f,
                                                        const MoveSchedule& schedule);

struct ZeroOnCurve {
  Rational time;
  ConnSubset set;
};

/// Smallest time at which I_f vanishes. Requires I_f(start) and I_f(end) not
/// to have the same strict sign.
[[nodiscard]] ZeroOnCurve find_zero_along(const MetricGraph& g, const StepFunction& f,
                                          const MoveSchedule& schedule);

}  // namespace chord
