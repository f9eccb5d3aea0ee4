#pragma once

// Lexicographic minimum of a bounded 2D polytope given by linear equalities
// and inequalities, by vertex enumeration. Used by the cell-pair solvers.

#include <optional>
#include <utility>
#include <vector>

#include "chord/rational.hpp"

namespace chord::detail {

/// a*x + b*y = c   (or <= c when used as a half-plane)
struct Line {
  Rational a;
  Rational b;
  Rational c;
};

using Point = std::pair<Rational, Rational>;

/// The feasible set must be bounded (the callers always box both variables).
inline std::optional<Point> lexmin_2d(const std::vector<Line>& equalities,
                                      const std::vector<Line>& inequalities) {
  std::vector<Line> eqs;
  for (const auto& e : equalities) {
    if (e.a == 0 && e.b == 0) {
      if (e.c != 0) return std::nullopt;
      continue;
    }
    eqs.push_back(e);
  }
  std::vector<Line> lines = eqs;
  lines.insert(lines.end(), inequalities.begin(), inequalities.end());

  auto feasible = [&](const Rational& x, const Rational& y) {
    for (const auto& e : eqs) {
      if (e.a * x + e.b * y != e.c) return false;
    }
    for (const auto& h : inequalities) {
      if (h.a * x + h.b * y > h.c) return false;
    }
    return true;
  };

  std::optional<Point> best;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line& p = lines[i];
      const Line& q = lines[j];
      const Rational det = p.a * q.b - p.b * q.a;
      if (det == 0) continue;
      Rational x = (p.c * q.b - p.b * q.c) / det;
      Rational y = (p.a * q.c - p.c * q.a) / det;
      if (!feasible(x, y)) continue;
      if (!best || x < best->first || (x == best->first && y < best->second)) {
        best = Point{std::move(x), std::move(y)};
      }
    }
  }
  return best;
}

}  // namespace chord::detail
