#pragma once

// Chord solvers on the interval, the circle and the two-colour necklace.
// Every solver is exact and returns the lexicographically smallest solution.

#include <span>
#include <string_view>
#include <vector>

#include "chord/step_function.hpp"

namespace chord {

struct ChordInterval {
  Rational lo;
  Rational hi;

  friend bool operator==(const ChordInterval&, const ChordInterval&) = default;
};

struct CommonChord {
  ChordInterval interval;
  Rational achieved;  // either r or 1 - r
};

/// J = [x, x + 1/k] with integral of f over J equal to 1/k; smallest x.
/// Requires f on [0,1] with total integral 1.
ChordInterval find_fixed_window(const Step1D& f, unsigned k);

/// Sum over i < k of the window integral starting at i/k. Equals the total
/// integral of f for every k.
Rational window_sum(const Step1D& f, unsigned k);

/// J with both integrals equal to r, or failing that both equal to 1 - r.
/// Requires f and g on [0,1] with integral 1 and r in [0,1]. Throws
/// InternalError if neither value is attainable.
CommonChord find_common_chord(const Step1D& f, const Step1D& g, const Rational& r);

/// J with both integrals exactly 1/k.
ChordInterval find_common_chord_k(const Step1D& f, const Step1D& g, unsigned k);

/// Integral over the arc [x, x + w] of a circle of circumference f.length(),
/// wrapping past the origin. 0 <= x <= L, 0 <= w <= L.
Rational arc_integral(const Step1D& f, const Rational& x, const Rational& w);

/// Smallest x in [0, L) whose arc of length w has integral c, where the
/// precondition c * L == w * total(f) makes c the forced mean value.
Rational find_arc_chord_circle(const Step1D& f, const Rational& w, const Rational& c);

struct CircleArc {
  Rational start;
  Rational length;
};

/// Free-length form on a circle of circumference 1: an arc on which both f
/// and g integrate to r. Requires both totals equal to 1.
CircleArc find_arc_common_circle(const Step1D& f, const Step1D& g, const Rational& r);

struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Curve parameters: the polyline is parametrised so that s in [i, i+1]
/// runs along segment i.
struct CurveChord {
  Rational s;
  Rational t;
};

Point2 polyline_at(std::span<const Point2> polyline, const Rational& s);

/// s < t with gamma(t) - gamma(s) = (B - A) / k. Closed polylines (A == B)
/// return s = 0, t = end.
CurveChord horizontal_chord(std::span<const Point2> polyline, unsigned k);

/// Continuous piecewise-linear function of period 1 given by its values at
/// breakpoints 0 = x_0 < ... < x_m = 1, with y_0 == y_m.
class PeriodicPL {
 public:
  PeriodicPL(std::vector<Rational> xs, std::vector<Rational> ys);
  [[nodiscard]] Rational operator()(const Rational& x) const;
  [[nodiscard]] const std::vector<Rational>& breakpoints() const { return xs_; }

 private:
  std::vector<Rational> xs_;
  std::vector<Rational> ys_;
};

/// Smallest x in [0,1) with F(x + t) == F(x).
Rational chord_of_periodic(const PeriodicPL& f, const Rational& t);

enum class Pearl { black, white };

std::vector<Pearl> parse_necklace(std::string_view text);  // 'B' / 'W'

struct NecklaceSplit {
  std::size_t first = 0;  // 1-based, inclusive
  std::size_t last = 0;
  std::vector<std::size_t> cuts;  // "cut after pearl i", strictly inside
};

/// Black count of each window of 2N consecutive pearls, by start index.
std::vector<std::size_t> necklace_window_counts(std::span<const Pearl> pearls);

/// The first window of 2N consecutive pearls holding exactly N blacks. Needs
/// 4N pearls, 2N of each colour.
NecklaceSplit necklace_split(std::span<const Pearl> pearls);

}  // namespace chord
