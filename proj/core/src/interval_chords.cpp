#include "chord/interval_chords.hpp"

#include <algorithm>
#include <optional>

#include "lexmin.hpp"

namespace chord {

namespace {

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Rational frac(const Rational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

// Smallest root of a continuous function that is linear between consecutive
// grid points.
template <class Eval>
std::optional<Rational> first_root(std::vector<Rational> grid, Eval eval, const Rational& target) {
  sort_unique(grid);
  std::optional<Rational> prev_x;
  Rational prev_v;
  for (const auto& x : grid) {
    Rational v = eval(x) - target;
    if (v == 0) return x;
    if (prev_x && sgn(prev_v) != sgn(v)) {
      return *prev_x + (-prev_v) * (x - *prev_x) / (v - prev_v);
    }
    prev_x = x;
    prev_v = std::move(v);
  }
  return std::nullopt;
}

void require_unit_density(const Step1D& f, const char* name) {
  if (f.length() != 1) throw PreconditionError(std::string(name) + " must live on [0,1]");
  if (f.total() != 1) throw PreconditionError(std::string(name) + " must integrate to 1");
}

// Lexicographically smallest [lo, hi] with both integrals equal to c.
std::optional<ChordInterval> solve_cells(const Step1D& f, const Step1D& g, const Rational& c) {
  std::vector<Rational> xs = f.breakpoints();
  xs.insert(xs.end(), g.breakpoints().begin(), g.breakpoints().end());
  sort_unique(xs);
  const std::size_t cells = xs.size() - 1;
  // On cell i: P(x) = p0[i] + a[i] x, Q(x) = q0[i] + b[i] x.
  std::vector<Rational> a(cells), b(cells), p0(cells), q0(cells);
  std::vector<Rational> pv(cells + 1), qv(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    pv[i] = f.prefix(xs[i]);
    qv[i] = g.prefix(xs[i]);
  }
  for (std::size_t i = 0; i < cells; ++i) {
    a[i] = f.value_at(xs[i]);
    b[i] = g.value_at(xs[i]);
    p0[i] = pv[i] - a[i] * xs[i];
    q0[i] = qv[i] - b[i] * xs[i];
  }
  // P and Q are linear on a cell, so their differences over cells i, j lie
  // between the endpoint extremes; pairs that cannot reach c are skipped.
  auto reachable = [&](const std::vector<Rational>& v, std::size_t i, std::size_t j) {
    const auto [lo_min, lo_max] = std::minmax(v[i], v[i + 1]);
    const auto [hi_min, hi_max] = std::minmax(v[j], v[j + 1]);
    return hi_min - lo_max <= c && c <= hi_max - lo_min;
  };
  std::optional<detail::Point> best;
  for (std::size_t i = 0; i < cells; ++i) {
    if (best && xs[i] > best->first) break;
    for (std::size_t j = i; j < cells; ++j) {
      if (!reachable(pv, i, j) || !reachable(qv, i, j)) continue;
      // P(hi) - P(lo) = c and Q(hi) - Q(lo) = c, variables (lo, hi).
      const std::vector<detail::Line> eqs = {
          {-a[i], a[j], c - p0[j] + p0[i]},
          {-b[i], b[j], c - q0[j] + q0[i]},
      };
      const std::vector<detail::Line> box = {
          {-1, 0, -xs[i]}, {1, 0, xs[i + 1]}, {0, -1, -xs[j]}, {0, 1, xs[j + 1]}, {1, -1, 0},
      };
      auto cand = detail::lexmin_2d(eqs, box);
      if (cand && (!best || *cand < *best)) best = std::move(cand);
    }
  }
  if (!best) return std::nullopt;
  return ChordInterval{best->first, best->second};
}

}  // namespace

ChordInterval find_fixed_window(const Step1D& f, unsigned k) {
  require_unit_density(f, "f");
  if (k == 0) throw PreconditionError("k must be a positive integer");
  const Rational w = frac(1, k);
  const Rational last = 1 - w;
  std::vector<Rational> grid = {0, last};
  for (const auto& b : f.breakpoints()) {
    if (b <= last) grid.push_back(b);
    if (b - w >= 0) grid.push_back(b - w);
  }
  auto x = first_root(grid, [&](const Rational& x) { return f.integral(x, x + w); }, w);
  if (!x) throw InternalError("sliding window found no window of integral 1/k");
  return {*x, *x + w};
}

Rational window_sum(const Step1D& f, unsigned k) {
  if (k == 0) throw PreconditionError("k must be a positive integer");
  const Rational w = f.length() / k;
  Rational total = 0;
  for (unsigned i = 0; i < k; ++i) total += f.integral(w * i, w * (i + 1));
  return total;
}

CommonChord find_common_chord(const Step1D& f, const Step1D& g, const Rational& r) {
  require_unit_density(f, "f");
  require_unit_density(g, "g");
  if (r < 0 || r > 1) throw PreconditionError("r must lie in [0,1]");
  if (auto j = solve_cells(f, g, r)) return {*j, r};
  const Rational other = 1 - r;
  if (other != r) {
    if (auto j = solve_cells(f, g, other)) return {*j, other};
  }
  throw InternalError("no common chord for r or 1-r; this contradicts the chord theorem");
}

ChordInterval find_common_chord_k(const Step1D& f, const Step1D& g, unsigned k) {
  require_unit_density(f, "f");
  require_unit_density(g, "g");
  if (k == 0) throw PreconditionError("k must be a positive integer");
  if (auto j = solve_cells(f, g, frac(1, k))) return *j;
  throw InternalError("no common chord of value 1/k; this contradicts the chord theorem");
}

Rational arc_integral(const Step1D& f, const Rational& x, const Rational& w) {
  const Rational& len = f.length();
  if (x < 0 || x > len || w < 0 || w > len) throw PreconditionError("arc outside the circle");
  if (x + w <= len) return f.integral(x, x + w);
  return f.integral(x, len) + f.integral(0, x + w - len);
}

Rational find_arc_chord_circle(const Step1D& f, const Rational& w, const Rational& c) {
  const Rational& len = f.length();
  if (w < 0 || w > len) throw PreconditionError("arc length must lie in [0, L]");
  if (c * len != w * f.total()) {
    throw PreconditionError("target must be the mean arc value (w / L) * total");
  }
  std::vector<Rational> grid = {0, len};
  for (const auto& b : f.breakpoints()) {
    grid.push_back(b == len ? Rational(0) : b);
    Rational shifted = b - w;
    if (shifted < 0) shifted += len;
    grid.push_back(shifted);
  }
  auto x = first_root(grid, [&](const Rational& x) { return arc_integral(f, x, w); }, c);
  if (!x) throw InternalError("no arc attains the mean value on the circle");
  return *x == len ? Rational(0) : *x;
}

CircleArc find_arc_common_circle(const Step1D& f, const Step1D& g, const Rational& r) {
  const CommonChord cc = find_common_chord(f, g, r);
  const Rational len = cc.interval.hi - cc.interval.lo;
  if (cc.achieved == r) return {cc.interval.lo, len};
  // The complementary arc carries 1 - (1 - r) = r.
  return {cc.interval.hi == 1 ? Rational(0) : cc.interval.hi, 1 - len};
}

// ---------------------------------------------------------------------------

Point2 polyline_at(std::span<const Point2> polyline, const Rational& s) {
  if (polyline.empty()) throw PreconditionError("empty polyline");
  const Rational end(static_cast<long>(polyline.size() - 1));
  if (s < 0 || s > end) throw PreconditionError("curve parameter out of range");
  if (s == end) return polyline.back();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  const std::size_t i = fl.get_ui();
  const Rational u = s - Rational(fl);
  const Point2& p = polyline[i];
  const Point2& q = polyline[i + 1];
  return {p.x + u * (q.x - p.x), p.y + u * (q.y - p.y)};
}

CurveChord horizontal_chord(std::span<const Point2> polyline, unsigned k) {
  if (polyline.empty()) throw PreconditionError("empty polyline");
  if (k == 0) throw PreconditionError("k must be a positive integer");
  const std::size_t m = polyline.size() - 1;
  const Rational dx = (polyline.back().x - polyline.front().x) / k;
  const Rational dy = (polyline.back().y - polyline.front().y) / k;
  if (dx == 0 && dy == 0) return {0, Rational(static_cast<long>(m))};

  std::optional<detail::Point> best;
  for (std::size_t i = 0; i < m; ++i) {
    if (best && Rational(static_cast<long>(i)) > best->first) break;
    const Rational si(static_cast<long>(i));
    const Rational ux = polyline[i + 1].x - polyline[i].x;
    const Rational uy = polyline[i + 1].y - polyline[i].y;
    for (std::size_t j = i; j < m; ++j) {
      const Rational tj(static_cast<long>(j));
      const Rational vx = polyline[j + 1].x - polyline[j].x;
      const Rational vy = polyline[j + 1].y - polyline[j].y;
      // gamma(t) = P_j + (t - j) v, gamma(s) = P_i + (s - i) u.
      const std::vector<detail::Line> eqs = {
          {-ux, vx, dx - polyline[j].x + tj * vx + polyline[i].x - si * ux},
          {-uy, vy, dy - polyline[j].y + tj * vy + polyline[i].y - si * uy},
      };
      const std::vector<detail::Line> box = {
          {-1, 0, -si}, {1, 0, si + 1}, {0, -1, -tj}, {0, 1, tj + 1}, {1, -1, 0},
      };
      auto cand = detail::lexmin_2d(eqs, box);
      if (cand && (!best || *cand < *best)) best = std::move(cand);
    }
  }
  if (!best) throw InternalError("no horizontal chord; this contradicts the chord theorem");
  return {best->first, best->second};
}

// ---------------------------------------------------------------------------

PeriodicPL::PeriodicPL(std::vector<Rational> xs, std::vector<Rational> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() < 2 || xs_.size() != ys_.size()) {
    throw PreconditionError("periodic function needs matching breakpoints and values");
  }
  if (xs_.front() != 0 || xs_.back() != 1) throw PreconditionError("breakpoints must span [0,1]");
  if (!std::is_sorted(xs_.begin(), xs_.end()) ||
      std::adjacent_find(xs_.begin(), xs_.end()) != xs_.end()) {
    throw PreconditionError("breakpoints must be strictly increasing");
  }
  if (ys_.front() != ys_.back()) throw PreconditionError("F(0) must equal F(1)");
}

Rational PeriodicPL::operator()(const Rational& x) const {
  const Rational u = frac(x);
  auto it = std::upper_bound(xs_.begin(), xs_.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (i + 1 >= xs_.size()) return ys_.back();
  return ys_[i] + (ys_[i + 1] - ys_[i]) * (u - xs_[i]) / (xs_[i + 1] - xs_[i]);
}

Rational chord_of_periodic(const PeriodicPL& f, const Rational& t) {
  std::vector<Rational> grid = {0, 1};
  for (const auto& b : f.breakpoints()) {
    grid.push_back(b);
    grid.push_back(frac(b - t));
  }
  auto x = first_root(grid, [&](const Rational& x) -> Rational { return f(x + t) - f(x); }, 0);
  if (!x) throw InternalError("periodic function without the requested chord");
  return *x == 1 ? Rational(0) : *x;
}

// ---------------------------------------------------------------------------

std::vector<Pearl> parse_necklace(std::string_view text) {
  std::vector<Pearl> out;
  for (char ch : text) {
    if (ch == 'B' || ch == 'b') {
      out.push_back(Pearl::black);
    } else if (ch == 'W' || ch == 'w') {
      out.push_back(Pearl::white);
    } else {
      throw PreconditionError(std::string("unknown pearl colour '") + ch + "'");
    }
  }
  return out;
}

std::vector<std::size_t> necklace_window_counts(std::span<const Pearl> pearls) {
  const std::size_t half = pearls.size() / 2;
  std::vector<std::size_t> counts;
  std::size_t c = static_cast<std::size_t>(
      std::count(pearls.begin(), pearls.begin() + static_cast<long>(half), Pearl::black));
  counts.push_back(c);
  for (std::size_t s = 1; s + half <= pearls.size(); ++s) {
    c -= pearls[s - 1] == Pearl::black;
    c += pearls[s + half - 1] == Pearl::black;
    counts.push_back(c);
  }
  return counts;
}

NecklaceSplit necklace_split(std::span<const Pearl> pearls) {
  if (pearls.empty() || pearls.size() % 4 != 0) {
    throw PreconditionError("necklace needs 4N pearls");
  }
  const std::size_t n = pearls.size() / 4;
  if (static_cast<std::size_t>(std::count(pearls.begin(), pearls.end(), Pearl::black)) != 2 * n) {
    throw PreconditionError("necklace needs 2N black and 2N white pearls");
  }
  const auto counts = necklace_window_counts(pearls);
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (counts[s] != n) continue;
    NecklaceSplit out;
    out.first = s + 1;
    out.last = s + 2 * n;
    if (s > 0) out.cuts.push_back(s);
    if (out.last < pearls.size()) out.cuts.push_back(out.last);
    return out;
  }
  throw InternalError("no balanced window; this contradicts the discrete intermediate value argument");
}

}  // namespace chord
