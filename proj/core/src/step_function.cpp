#include "chord/step_function.hpp"

#include <algorithm>

namespace chord {

Step1D::Step1D(Rational length, Rational value) {
  if (length <= 0) throw PreconditionError("step function domain must have positive length");
  breaks_ = {0, std::move(length)};
  values_ = {std::move(value)};
  cumulative_ = {0, values_[0] * breaks_[1]};
}

Step1D::Step1D(std::span<const StepPiece> pieces) {
  if (pieces.empty()) throw PreconditionError("step function needs at least one piece");
  if (pieces.front().from != 0) throw PreconditionError("step function must start at 0");
  breaks_.push_back(0);
  cumulative_.push_back(0);
  for (const auto& p : pieces) {
    if (p.from != breaks_.back() || p.to <= p.from) {
      throw PreconditionError("step pieces must be contiguous and strictly increasing");
    }
    breaks_.push_back(p.to);
    values_.push_back(p.value);
    cumulative_.push_back(cumulative_.back() + p.value * (p.to - p.from));
  }
}

std::vector<StepPiece> Step1D::pieces() const {
  std::vector<StepPiece> out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.push_back({breaks_[i], breaks_[i + 1], values_[i]});
  }
  return out;
}

std::size_t Step1D::piece_index(const Rational& x) const {
  if (x < 0 || x > length()) throw PreconditionError("point outside step function domain");
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
  return std::min(i == 0 ? 0 : i - 1, values_.size() - 1);
}

const Rational& Step1D::value_at(const Rational& x) const { return values_[piece_index(x)]; }

Rational Step1D::prefix(const Rational& x) const {
  const std::size_t i = piece_index(x);
  return cumulative_[i] + values_[i] * (x - breaks_[i]);
}

Rational Step1D::integral(const Rational& a, const Rational& b) const {
  if (a > b) throw PreconditionError("integral bounds reversed");
  return prefix(b) - prefix(a);
}

Rational Step1D::max_abs() const {
  Rational m = 0;
  for (const auto& v : values_) m = max(m, Rational(abs(v)));
  return m;
}

Step1D Step1D::reversed() const {
  std::vector<StepPiece> out;
  const Rational& len = length();
  for (std::size_t i = values_.size(); i-- > 0;) {
    out.push_back({len - breaks_[i + 1], len - breaks_[i], values_[i]});
  }
  return Step1D(out);
}

Step1D Step1D::concat(const Step1D& next) const {
  auto out = pieces();
  const Rational shift = length();
  for (auto p : next.pieces()) {
    p.from += shift;
    p.to += shift;
    out.push_back(std::move(p));
  }
  return Step1D(out);
}

Step1D combine(const Rational& alpha, const Step1D& f, const Rational& beta, const Step1D& g) {
  if (f.length() != g.length()) throw PreconditionError("combine: domain lengths differ");
  std::vector<Rational> grid = f.breakpoints();
  grid.insert(grid.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<StepPiece> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    out.push_back({grid[i], grid[i + 1], alpha * f.value_at(grid[i]) + beta * g.value_at(grid[i])});
  }
  return Step1D(out);
}

StepFunction StepFunction::constant(const MetricGraph& g, const Rational& value) {
  return StepFunction(g, std::vector<Step1D>(g.edge_count(), Step1D(1, value)));
}

StepFunction::StepFunction(const MetricGraph& g, std::vector<Step1D> per_edge)
    : per_edge_(std::move(per_edge)) {
  if (per_edge_.size() != g.edge_count()) {
    throw PreconditionError("step function must define every edge");
  }
  for (const auto& s : per_edge_) {
    if (s.length() != 1) throw PreconditionError("edge step functions live on [0,1]");
  }
}

Rational StepFunction::max_abs() const {
  Rational m = 0;
  for (const auto& s : per_edge_) m = max(m, s.max_abs());
  return m;
}

StepFunction combine(const MetricGraph& graph, const Rational& alpha, const StepFunction& f,
                     const Rational& beta, const StepFunction& g) {
  std::vector<Step1D> out;
  for (EdgeIndex e = 0; e < f.edge_count(); ++e) out.push_back(combine(alpha, f.on(e), beta, g.on(e)));
  return StepFunction(graph, std::move(out));
}

Rational integral_graph(const StepFunction& f) {
  Rational total = 0;
  for (EdgeIndex e = 0; e < f.edge_count(); ++e) total += f.on(e).total();
  return total;
}

Rational integral_subset(const StepFunction& f, const Subset& u) {
  if (u.edge_count() != f.edge_count()) throw PreconditionError("subset/function mismatch");
  Rational total = 0;
  for (EdgeIndex e = 0; e < f.edge_count(); ++e) {
    for (const auto& iv : u.trace(e)) total += f.on(e).integral(iv.lo, iv.hi);
  }
  return total;
}

Rational integral_path(const StepFunction& f, std::span<const Traversal> walk) {
  Rational total = 0;
  for (const auto& step : walk) total += f.on(step.edge).total();
  return total;
}

Step1D along(const StepFunction& f, const Traversal& step) {
  return step.forward ? f.on(step.edge) : f.on(step.edge).reversed();
}

}  // namespace chord
