#include "chord/game_engine.hpp"

#include <algorithm>
#include <numeric>

namespace chord {

namespace {

std::size_t dots_on(const Board& board) {
  return std::visit(
      [](const auto& b) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, CircleBoard>) {
          return b.dots;
        } else {
          return b.dots.size();
        }
      },
      board);
}

struct Piece {
  std::size_t a;
  std::size_t b;
  EdgeSegment segment;
};

// Edges cut at the dots: nodes are the vertices followed by the dots.
std::vector<Piece> cut_at_dots(const MetricGraph& g, std::span<const GraphPoint> dots) {
  std::vector<Piece> pieces;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    std::vector<std::pair<Rational, std::size_t>> on_edge;
    for (std::size_t i = 0; i < dots.size(); ++i) {
      if (dots[i].edge == e) on_edge.emplace_back(dots[i].t, g.vertex_count() + i);
    }
    std::sort(on_edge.begin(), on_edge.end());
    std::size_t node = g.edge(e).tail;
    Rational t = 0;
    for (const auto& [s, id] : on_edge) {
      pieces.push_back({node, id, {e, t, s}});
      node = id;
      t = s;
    }
    pieces.push_back({node, g.edge(e).head, {e, t, 1}});
  }
  return pieces;
}

template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (visit(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void check_move_shape(const GameConfig& config, const GameState& state,
                      const std::vector<std::size_t>& dots) {
  if (state.terminal()) throw IllegalMove("game is over");
  if (dots.empty()) throw IllegalMove("a turn crosses at least one dot");
  if (dots.size() > move_cap(config, state)) throw IllegalMove("too many dots for this turn");
  for (std::size_t i = 0; i < dots.size(); ++i) {
    if (dots[i] >= state.status.size()) throw IllegalMove("no such dot");
    if (i > 0 && dots[i] == dots[i - 1]) throw IllegalMove("dot listed twice");
    if (state.status[dots[i]] != DotStatus::uncrossed) throw IllegalMove("dot already crossed");
  }
}

}  // namespace

void GameConfig::validate() const {
  if (N < 1) throw PreconditionError("N must be positive");
  if (m < 1 || m > N) throw PreconditionError("m must lie in [1, N]");
  if (n < 1 || n > N) throw PreconditionError("n must lie in [1, N]");
  if (dots_on(board) != dot_count()) throw PreconditionError("board must carry 2N dots");
  if (const auto* euler = std::get_if<EulerBoard>(&board)) {
    if (!euler->graph.is_euler()) throw PreconditionError("board graph is not Euler");
    for (std::size_t i = 0; i < euler->dots.size(); ++i) {
      const GraphPoint& p = euler->dots[i];
      if (p.edge >= euler->graph.edge_count() || p.t <= 0 || p.t >= 1) {
        throw PreconditionError("dots must be interior edge points");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (euler->dots[j] == p) throw PreconditionError("dots must be distinct");
      }
    }
  }
}

bool GameState::terminal() const { return witness.has_value() || uncrossed() == 0; }

std::size_t GameState::uncrossed() const {
  return static_cast<std::size_t>(std::count(status.begin(), status.end(), DotStatus::uncrossed));
}

GameState new_game(const GameConfig& config) {
  config.validate();
  GameState state;
  state.status.assign(config.dot_count(), DotStatus::uncrossed);
  return state;
}

std::size_t move_cap(const GameConfig& config, const GameState& state) {
  const std::size_t left = config.N - state.count(state.turn);
  return std::min({static_cast<std::size_t>(config.m), left, state.uncrossed()});
}

std::vector<std::vector<std::size_t>> legal_moves(const GameConfig& config, const GameState& state) {
  if (state.terminal()) throw PreconditionError("game is over");
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < state.status.size(); ++i) {
    if (state.status[i] == DotStatus::uncrossed) open.push_back(i);
  }
  std::vector<std::vector<std::size_t>> moves;
  for (std::size_t size = 1; size <= move_cap(config, state); ++size) {
    for_each_combination(open.size(), size, [&](const std::vector<std::size_t>& idx) {
      std::vector<std::size_t> move;
      for (std::size_t i : idx) move.push_back(open[i]);
      moves.push_back(std::move(move));
      return false;
    });
  }
  return moves;
}

GameState apply_move(const GameConfig& config, const GameState& state, std::vector<std::size_t> dots) {
  std::sort(dots.begin(), dots.end());
  check_move_shape(config, state, dots);
  GameState next = state;
  const Player mover = state.turn;
  for (std::size_t d : dots) next.status[d] = mark_of(mover);
  next.crossed[static_cast<int>(mover)] += static_cast<unsigned>(dots.size());
  next.history.push_back(std::move(dots));
  if (auto w = detect_loss(config, next)) {
    w->loser = mover;
    next.witness = std::move(w);
  }
  if (next.count(other(mover)) < config.N) next.turn = other(mover);
  return next;
}

std::optional<LossWitness> detect_loss_circle(std::span<const DotStatus> status, unsigned n) {
  const std::size_t size = status.size();
  const std::size_t width = 2 * static_cast<std::size_t>(n);
  if (width > size || width == 0) return std::nullopt;
  const std::size_t starts = width == size ? 1 : size;
  for (std::size_t s = 0; s < starts; ++s) {
    std::size_t ones = 0;
    bool all_crossed = true;
    for (std::size_t i = 0; i < width && all_crossed; ++i) {
      const DotStatus d = status[(s + i) % size];
      all_crossed = d != DotStatus::uncrossed;
      ones += d == DotStatus::player1;
    }
    if (!all_crossed || ones != n) continue;
    LossWitness w;
    for (std::size_t i = 0; i < width; ++i) w.dots.push_back((s + i) % size);
    std::sort(w.dots.begin(), w.dots.end());
    w.arc_start = s;
    return w;
  }
  return std::nullopt;
}

std::optional<LossWitness> detect_loss_graph(const MetricGraph& g, std::span<const GraphPoint> dots,
                                             std::span<const DotStatus> status, unsigned n) {
  if (dots.size() != status.size()) throw PreconditionError("one status per dot");
  const std::vector<Piece> pieces = cut_at_dots(g, dots);
  std::vector<std::size_t> crossed;
  for (std::size_t i = 0; i < status.size(); ++i) {
    if (status[i] != DotStatus::uncrossed) crossed.push_back(i);
  }
  const std::size_t nodes = g.vertex_count() + dots.size();
  std::optional<LossWitness> found;
  for_each_combination(crossed.size(), 2 * static_cast<std::size_t>(n), [&](const std::vector<std::size_t>& idx) {
    std::size_t ones = 0;
    for (std::size_t i : idx) ones += status[crossed[i]] == DotStatus::player1;
    if (ones != n) return false;
    std::vector<char> allowed(nodes, 0);
    std::fill(allowed.begin(), allowed.begin() + static_cast<long>(g.vertex_count()), 1);
    for (std::size_t i : idx) allowed[g.vertex_count() + crossed[i]] = 1;
    std::vector<std::size_t> parent(nodes);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& p : pieces) {
      if (allowed[p.a] && allowed[p.b]) parent[find(p.a)] = find(p.b);
    }
    const std::size_t root = find(g.vertex_count() + crossed[idx.front()]);
    for (std::size_t i : idx) {
      if (find(g.vertex_count() + crossed[i]) != root) return false;
    }
    std::vector<EdgeSegment> region;
    for (const auto& p : pieces) {
      if (allowed[p.a] && allowed[p.b] && find(p.a) == root) region.push_back(p.segment);
    }
    LossWitness w;
    for (std::size_t i : idx) w.dots.push_back(crossed[i]);
    w.region = ConnSubset::from_segments(g, region);
    found = std::move(w);
    return true;
  });
  return found;
}

std::optional<LossWitness> detect_loss(const GameConfig& config, const GameState& state) {
  if (std::holds_alternative<CircleBoard>(config.board)) return detect_loss_circle(state.status, config.n);
  const auto& euler = std::get<EulerBoard>(config.board);
  return detect_loss_graph(euler.graph, euler.dots, state.status, config.n);
}

std::vector<std::size_t> random_move(const GameConfig& config, const GameState& state,
                                     std::mt19937_64& rng) {
  if (state.terminal()) throw PreconditionError("game is over");
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < state.status.size(); ++i) {
    if (state.status[i] == DotStatus::uncrossed) open.push_back(i);
  }
  std::uniform_int_distribution<std::size_t> size(1, move_cap(config, state));
  std::shuffle(open.begin(), open.end(), rng);
  open.resize(size(rng));
  std::sort(open.begin(), open.end());
  return open;
}

WinnerReport random_playouts(const GameConfig& config, std::size_t playouts, std::uint64_t seed) {
  WinnerReport report;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < playouts; ++i) {
    GameState state = new_game(config);
    while (!state.terminal()) state = apply_move(config, state, random_move(config, state, rng));
    ++report.cases;
    if (!state.witness) ++report.violations;
  }
  return report;
}

WinnerReport winner_guarantee_check(const GameConfig& config, std::size_t playouts, std::uint64_t seed) {
  config.validate();
  if (config.dot_count() > 8) return random_playouts(config, playouts, seed);
  WinnerReport report;
  report.exhaustive = true;
  GameState state = new_game(config);
  for_each_combination(config.dot_count(), config.N, [&](const std::vector<std::size_t>& ones) {
    std::fill(state.status.begin(), state.status.end(), DotStatus::player2);
    for (std::size_t i : ones) state.status[i] = DotStatus::player1;
    ++report.cases;
    if (!detect_loss(config, state)) ++report.violations;
    return false;
  });
  return report;
}

}  // namespace chord
