#include "chord/subset_space.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace chord {

namespace {

Rational end_of(const Tip& tip, const Rational& dt) { return tip.at.t + tip.dir * dt; }

void check_tip(const MetricGraph& g, const Tip& tip, const Rational& dt) {
  if (tip.at.edge >= g.edge_count() || (tip.dir != 1 && tip.dir != -1)) {
    throw PreconditionError("malformed tip");
  }
  const Rational q = end_of(tip, dt);
  if (tip.at.t < 0 || tip.at.t > 1 || q < 0 || q > 1) {
    throw PreconditionError("tip move runs past a vertex");
  }
}

// closure(S \ sweep), where the sweep contains its starting point p and not
// its end point q.
Subset remove_sweep(const MetricGraph& g, const Subset& s, const Tip& tip, const Rational& dt) {
  if (dt == 0) return s;
  const Rational& p = tip.at.t;
  const Rational q = end_of(tip, dt);
  const Rational a = min(p, q);
  const Rational b = max(p, q);
  const bool a_open = a == q;
  const bool b_open = b == q;
  auto traces = s.traces();
  std::vector<Interval> kept;
  for (const auto& iv : traces[tip.at.edge]) {
    if (iv.hi < a || iv.lo > b) {
      kept.push_back(iv);
      continue;
    }
    if (iv.lo < a) {
      kept.push_back({iv.lo, a});
    } else if (iv.lo == a && a_open) {
      kept.push_back({a, a});
    }
    if (iv.hi > b) {
      kept.push_back({b, iv.hi});
    } else if (iv.hi == b && b_open) {
      kept.push_back({b, b});
    }
  }
  traces[tip.at.edge] = std::move(kept);
  return Subset::from_traces(g, std::move(traces));
}

Subset add_sweep(const MetricGraph& g, const Subset& s, const Tip& tip, const Rational& dt) {
  const Rational q = end_of(tip, dt);
  auto traces = s.traces();
  traces[tip.at.edge].push_back({min(tip.at.t, q), max(tip.at.t, q)});
  return Subset::from_traces(g, std::move(traces));
}

// Whether the open run just beyond p (in direction dir) lies in the trace,
// and how far that status persists, capped at `cap`.
std::pair<bool, Rational> run_status(const std::vector<Interval>& trace, const Rational& p, int dir,
                                     const Rational& cap) {
  if (dir > 0) {
    for (const auto& iv : trace) {
      if (iv.lo <= p && p < iv.hi) return {true, min(Rational(iv.hi - p), cap)};
      if (iv.lo > p) return {false, min(Rational(iv.lo - p), cap)};
    }
  } else {
    for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
      if (it->lo < p && p <= it->hi) return {true, min(Rational(p - it->lo), cap)};
      if (it->hi < p) return {false, min(Rational(p - it->hi), cap)};
    }
  }
  return {false, cap};
}

// ---------------------------------------------------------------------------
// Retraction: the set as a finite graph of arcs between vertices, segment
// tips and the target point.

struct Arc {
  EdgeIndex edge;
  Rational a;
  Rational b;
  std::size_t na;
  std::size_t nb;
  bool alive = true;
};

class ArcGraph {
 public:
  ArcGraph(const MetricGraph& g, const Subset& c, const GraphPoint& x) : g_(g) {
    if (auto v = g.vertex_at(x)) {
      x_node_ = *v;
    } else {
      x_node_ = node(x.edge, x.t);
    }
    for (const auto& seg : c.segments()) {
      if (seg.lo == seg.hi) continue;
      if (!g.vertex_at(x) && x.edge == seg.edge && seg.lo < x.t && x.t < seg.hi) {
        add_arc(seg.edge, seg.lo, x.t);
        add_arc(seg.edge, x.t, seg.hi);
      } else {
        add_arc(seg.edge, seg.lo, seg.hi);
      }
    }
  }

  std::vector<TipMove> peel() {
    std::vector<TipMove> moves;
    for (;;) {
      auto pick = next_removal();
      if (!pick) break;
      auto [k, from_a] = *pick;
      Arc& arc = arcs_[k];
      arc.alive = false;
      const Rational dt = arc.b - arc.a;
      const Tip tip = from_a ? Tip{{arc.edge, arc.a}, 1} : Tip{{arc.edge, arc.b}, -1};
      moves.push_back({std::nullopt, tip, dt});
    }
    return moves;
  }

 private:
  std::size_t node(EdgeIndex e, const Rational& t) {
    if (t == 0) return g_.edge(e).tail;
    if (t == 1) return g_.edge(e).head;
    auto [it, fresh] = interior_.try_emplace({e, t}, g_.vertex_count() + interior_.size());
    return it->second;
  }

  void add_arc(EdgeIndex e, const Rational& a, const Rational& b) {
    const std::size_t na = node(e, a);
    const std::size_t nb = node(e, b);
    arcs_.push_back({e, a, b, na, nb});
  }

  std::size_t node_count() const { return g_.vertex_count() + interior_.size(); }

  std::size_t degree(std::size_t n) const {
    std::size_t d = 0;
    for (const auto& arc : arcs_) {
      if (!arc.alive) continue;
      d += (arc.na == n) + (arc.nb == n);
    }
    return d;
  }

  bool connected_without(std::size_t skip) const {
    std::vector<std::vector<std::size_t>> adj(node_count());
    std::vector<char> wanted(node_count(), 0);
    wanted[x_node_] = 1;
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      if (!arcs_[k].alive) continue;
      wanted[arcs_[k].na] = wanted[arcs_[k].nb] = 1;
      if (k == skip) continue;
      adj[arcs_[k].na].push_back(arcs_[k].nb);
      adj[arcs_[k].nb].push_back(arcs_[k].na);
    }
    std::vector<char> seen(node_count(), 0);
    std::deque<std::size_t> queue = {x_node_};
    seen[x_node_] = 1;
    while (!queue.empty()) {
      const std::size_t n = queue.front();
      queue.pop_front();
      for (std::size_t m : adj[n]) {
        if (!seen[m]) {
          seen[m] = 1;
          queue.push_back(m);
        }
      }
    }
    for (std::size_t n = 0; n < node_count(); ++n) {
      if (wanted[n] && !seen[n]) return false;
    }
    return true;
  }

  // (arc, remove starting from its `a` end?)
  std::optional<std::pair<std::size_t, bool>> next_removal() const {
    bool any = false;
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      const Arc& arc = arcs_[k];
      if (!arc.alive) continue;
      any = true;
      if (arc.na != x_node_ && degree(arc.na) == 1) return std::pair{k, true};
      if (arc.nb != x_node_ && degree(arc.nb) == 1) return std::pair{k, false};
    }
    if (!any) return std::nullopt;
    for (std::size_t k = 0; k < arcs_.size(); ++k) {
      if (arcs_[k].alive && connected_without(k)) return std::pair{k, arcs_[k].na != x_node_};
    }
    throw InternalError("retraction found neither a leaf nor a cycle arc");
  }

  const MetricGraph& g_;
  std::map<std::pair<EdgeIndex, Rational>, std::size_t> interior_;
  std::vector<Arc> arcs_;
  std::size_t x_node_ = 0;
};

// ---------------------------------------------------------------------------
// Pouring: one shrink process and one grow process run against each other so
// that the union keeps its measure.

class Runner {
 public:
  Runner(std::vector<TipMove> moves, bool grow) : moves_(std::move(moves)), grow_(grow) {
    std::erase_if(moves_, [](const TipMove& m) { return m.dt == 0; });
  }
  [[nodiscard]] bool exhausted() const { return idx_ >= moves_.size(); }
  [[nodiscard]] Rational remaining() const { return moves_[idx_].dt - done_; }
  [[nodiscard]] Tip current() const {
    Tip t = grow_ ? *moves_[idx_].grow : *moves_[idx_].shrink;
    t.at.t += t.dir * done_;
    return t;
  }
  void advance(const Rational& dt) {
    done_ += dt;
    if (done_ == moves_[idx_].dt) {
      ++idx_;
      done_ = 0;
    }
  }

 private:
  std::vector<TipMove> moves_;
  bool grow_;
  std::size_t idx_ = 0;
  Rational done_ = 0;
};

struct PourState {
  Subset current;  // == retracting part U growing part
  Subset retracting;
  Subset growing;
};

void pour(const MetricGraph& g, PourState& st, Runner& shrink, Runner& grow,
          const std::optional<Rational>& limit, std::vector<TipMove>& out) {
  Rational elapsed = 0;
  for (;;) {
    for (bool progressed = true; progressed;) {
      progressed = false;
      if (!shrink.exhausted()) {
        const Tip tip = shrink.current();
        auto [inside, len] =
            run_status(st.growing.trace(tip.at.edge), tip.at.t, tip.dir, shrink.remaining());
        if (inside) {
          st.retracting = remove_sweep(g, st.retracting, tip, len);
          shrink.advance(len);
          progressed = true;
        }
      }
      if (!grow.exhausted()) {
        const Tip tip = grow.current();
        auto [inside, len] =
            run_status(st.retracting.trace(tip.at.edge), tip.at.t, tip.dir, grow.remaining());
        if (inside) {
          st.growing = add_sweep(g, st.growing, tip, len);
          grow.advance(len);
          progressed = true;
        }
      }
    }
    if (limit && elapsed == *limit) return;
    if (shrink.exhausted() && grow.exhausted()) return;
    if (shrink.exhausted() || grow.exhausted()) {
      throw InternalError("measure-preserving pour ran out of one side");
    }
    const Tip s = shrink.current();
    const Tip w = grow.current();
    Rational dt = min(run_status(st.growing.trace(s.at.edge), s.at.t, s.dir, shrink.remaining()).second,
                      run_status(st.retracting.trace(w.at.edge), w.at.t, w.dir, grow.remaining()).second);
    if (limit) dt = min(dt, Rational(*limit - elapsed));
    TipMove move{w, s, dt};
    st.current = apply_move(g, st.current, move, dt);
    st.retracting = remove_sweep(g, st.retracting, s, dt);
    st.growing = add_sweep(g, st.growing, w, dt);
    shrink.advance(dt);
    grow.advance(dt);
    elapsed += dt;
    out.push_back(std::move(move));
  }
}

std::vector<TipMove> reversed_as_growth(const std::vector<TipMove>& shrinks) {
  std::vector<TipMove> out;
  for (auto it = shrinks.rbegin(); it != shrinks.rend(); ++it) {
    const Tip& t = *it->shrink;
    out.push_back({Tip{{t.at.edge, end_of(t, it->dt)}, -t.dir}, std::nullopt, it->dt});
  }
  return out;
}

GraphPoint first_common_point(const MetricGraph& g, const Subset& a, const Subset& b) {
  const Subset common = set_intersection(g, a, b);
  for (const auto& seg : common.segments()) return {seg.edge, seg.lo};
  throw InternalError("sets expected to meet");
}

}  // namespace

// ---------------------------------------------------------------------------

Rational MoveSchedule::duration() const {
  Rational total = 0;
  for (const auto& m : moves) total += m.dt;
  return total;
}

Subset apply_move(const MetricGraph& g, const Subset& s, const TipMove& move, const Rational& dt) {
  if (dt < 0 || dt > move.dt) throw PreconditionError("partial move time out of range");
  if (!move.grow && !move.shrink) throw PreconditionError("move without tips");
  Subset out = s;
  if (move.shrink) {
    check_tip(g, *move.shrink, move.dt);
    out = remove_sweep(g, out, *move.shrink, dt);
  }
  if (move.grow) {
    check_tip(g, *move.grow, move.dt);
    out = add_sweep(g, out, *move.grow, dt);
  }
  return out;
}

ConnSubset apply_prefix(const MetricGraph& g, const MoveSchedule& schedule, const Rational& s) {
  if (s < 0 || s > schedule.duration()) throw PreconditionError("prefix time out of range");
  Subset cur = schedule.start;
  Rational t = 0;
  for (const auto& m : schedule.moves) {
    if (t + m.dt <= s) {
      cur = apply_move(g, cur, m, m.dt);
      t += m.dt;
      continue;
    }
    cur = apply_move(g, cur, m, s - t);
    break;
  }
  return ConnSubset::make(g, std::move(cur));
}

MoveSchedule retraction_schedule(const MetricGraph& g, const ConnSubset& c, const GraphPoint& x) {
  if (!c.set().contains(g, x)) throw PreconditionError("retraction target is not in the set");
  ArcGraph arcs(g, c, x);
  return {c, arcs.peel()};
}

MoveSchedule connect_in_xr(const MetricGraph& g, const ConnSubset& a, const ConnSubset& b,
                           const Rational& r) {
  if (measure(a) != r || measure(b) != r) throw PreconditionError("both sets must have measure r");
  if (r <= 0 || r >= Rational(static_cast<long>(g.edge_count()))) {
    throw PreconditionError("r must lie strictly between 0 and |E|");
  }
  MoveSchedule schedule{a, {}};
  if (a == b) return schedule;

  PourState st{a, a, a};
  // Approach: slide towards b along geodesics until the sets meet.
  while (!intersects(g, st.current, b)) {
    const auto path = geodesic(g, st.current, b);
    Rational s = 0;
    std::vector<TipMove> grow_moves;
    for (const auto& piece : path) {
      s += piece.length();
      grow_moves.push_back({Tip{{piece.edge, piece.from}, piece.to > piece.from ? 1 : -1},
                            std::nullopt, piece.length()});
    }
    const GraphPoint foot{path.front().edge, path.front().from};
    const ConnSubset cur = ConnSubset::make(g, st.current);
    Runner shrink(retraction_schedule(g, cur, foot).moves, false);
    Runner grow(std::move(grow_moves), true);
    st.retracting = st.current;
    st.growing = Subset::point(g, foot);
    pour(g, st, shrink, grow, min(r, s), schedule.moves);
  }

  // Exchange: retract to a common point while growing b back out of it.
  const GraphPoint x = first_common_point(g, st.current, b);
  const ConnSubset cur = ConnSubset::make(g, st.current);
  Runner shrink(retraction_schedule(g, cur, x).moves, false);
  Runner grow(reversed_as_growth(retraction_schedule(g, b, x).moves), true);
  st.retracting = st.current;
  st.growing = Subset::point(g, x);
  pour(g, st, shrink, grow, std::nullopt, schedule.moves);

  if (!(st.current == b.set())) throw InternalError("homotopy did not end at the target set");
  return schedule;
}

MoveSchedule split_at_breakpoints(const MoveSchedule& schedule, const StepFunction& f) {
  MoveSchedule out{schedule.start, {}};
  for (const auto& m : schedule.moves) {
    std::vector<Rational> cuts = {0, m.dt};
    for (const auto& tip : {m.grow, m.shrink}) {
      if (!tip) continue;
      const Rational q = end_of(*tip, m.dt);
      for (const auto& bp : f.on(tip->at.edge).breakpoints()) {
        if (min(tip->at.t, q) < bp && bp < max(tip->at.t, q)) cuts.push_back(abs(bp - tip->at.t));
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      TipMove part = m;
      part.dt = cuts[i + 1] - cuts[i];
      if (part.grow) part.grow->at.t = end_of(*m.grow, cuts[i]);
      if (part.shrink) part.shrink->at.t = end_of(*m.shrink, cuts[i]);
      out.moves.push_back(std::move(part));
    }
  }
  return out;
}

std::vector<ProfileKnot> integral_profile(const MetricGraph& g, const StepFunction& f,
                                          const MoveSchedule& schedule) {
  const MoveSchedule split = split_at_breakpoints(schedule, f);
  Subset cur = split.start;
  Rational t = 0;
  std::vector<ProfileKnot> knots = {{0, integral_subset(f, cur)}};
  for (const auto& m : split.moves) {
    cur = apply_move(g, cur, m, m.dt);
    t += m.dt;
    knots.push_back({t, integral_subset(f, cur)});
  }
  return knots;
}

ZeroOnCurve find_zero_along(const MetricGraph& g, const StepFunction& f,
                            const MoveSchedule& schedule) {
  const MoveSchedule split = split_at_breakpoints(schedule, f);
  Subset cur = split.start;
  Rational value = integral_subset(f, cur);
  if (value == 0) return {0, split.start};

  std::vector<Subset> after;
  after.reserve(split.moves.size());
  Subset end = cur;
  for (const auto& m : split.moves) {
    end = apply_move(g, end, m, m.dt);
    after.push_back(end);
  }
  if (sgn(integral_subset(f, end)) == sgn(value)) {
    throw PreconditionError("I_f has the same strict sign at both ends of the curve");
  }

  Rational t = 0;
  for (std::size_t i = 0; i < split.moves.size(); ++i) {
    const TipMove& m = split.moves[i];
    const Rational next = integral_subset(f, after[i]);
    if (sgn(next) != sgn(value)) {
      const Rational tau = -value * m.dt / (next - value);
      ConnSubset u = ConnSubset::make(g, apply_move(g, cur, m, tau));
      if (integral_subset(f, u) != 0) throw InternalError("I_f not linear within a split move");
      return {t + tau, std::move(u)};
    }
    cur = after[i];
    value = next;
    t += m.dt;
  }
  throw InternalError("no sign change found despite opposite end signs");
}

}  // namespace chord
