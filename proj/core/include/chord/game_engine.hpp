#pragma once

// The two-player dot-crossing game on a circle or on an Euler graph.
// Players alternately cross out between 1 and m dots; whoever first completes
// a turn that leaves a connected region holding exactly 2n dots, all crossed
// and split n/n between the players, loses.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "chord/metric_graph.hpp"

namespace chord {

struct CircleBoard {
  std::size_t dots = 0;
};

/// Dots are interior edge points, pairwise distinct.
struct EulerBoard {
  MetricGraph graph;
  std::vector<GraphPoint> dots;
};

using Board = std::variant<CircleBoard, EulerBoard>;

struct GameConfig {
  Board board;
  unsigned N = 1;  // dots per player
  unsigned m = 1;  // max dots per turn
  unsigned n = 1;  // half-size of the losing window

  /// Throws PreconditionError unless the board has 2N dots, 1 <= m, n <= N,
  /// and an Euler board has an Euler graph with valid dot positions.
  void validate() const;
  [[nodiscard]] std::size_t dot_count() const { return 2 * static_cast<std::size_t>(N); }
};

enum class Player : std::uint8_t { one = 0, two = 1 };
enum class DotStatus : std::uint8_t { uncrossed, player1, player2 };

[[nodiscard]] constexpr Player other(Player p) { return p == Player::one ? Player::two : Player::one; }
[[nodiscard]] constexpr DotStatus mark_of(Player p) {
  return p == Player::one ? DotStatus::player1 : DotStatus::player2;
}

struct LossWitness {
  /// The 2n dots, ascending.
  std::vector<std::size_t> dots;
  Player loser = Player::one;
  /// Circle boards: index of the first dot of the window, read cyclically.
  std::optional<std::size_t> arc_start;
  /// Euler boards: a connected subset holding exactly those dots.
  std::optional<ConnSubset> region;
};

struct GameState {
  std::vector<DotStatus> status;
  Player turn = Player::one;
  unsigned crossed[2] = {0, 0};
  std::vector<std::vector<std::size_t>> history;
  std::optional<LossWitness> witness;

  [[nodiscard]] bool terminal() const;
  [[nodiscard]] std::size_t version() const { return history.size(); }
  [[nodiscard]] std::size_t uncrossed() const;
  [[nodiscard]] unsigned count(Player p) const { return crossed[static_cast<int>(p)]; }
};

class IllegalMove : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

[[nodiscard]] GameState new_game(const GameConfig& config);

/// Largest number of dots the player to move may take now.
[[nodiscard]] std::size_t move_cap(const GameConfig& config, const GameState& state);

/// Every set of uncrossed dots of size 1..move_cap, ascending, sizes first.
/// Throws PreconditionError on a terminal state.
[[nodiscard]] std::vector<std::vector<std::size_t>> legal_moves(const GameConfig& config,
                                                                const GameState& state);

/// Throws IllegalMove unless `dots` is a legal move.
[[nodiscard]] GameState apply_move(const GameConfig& config, const GameState& state,
                                   std::vector<std::size_t> dots);

/// First window of 2n cyclically consecutive dots, all crossed, n per player,
/// by start index.
[[nodiscard]] std::optional<LossWitness> detect_loss_circle(std::span<const DotStatus> status,
                                                            unsigned n);

/// Lexicographically least set of 2n crossed dots, n per player, that a
/// connected subset can hold without touching any other dot.
[[nodiscard]] std::optional<LossWitness> detect_loss_graph(const MetricGraph& g,
                                                           std::span<const GraphPoint> dots,
                                                           std::span<const DotStatus> status,
                                                           unsigned n);

/// The loser field is left at Player::one; apply_move fills in the mover.
[[nodiscard]] std::optional<LossWitness> detect_loss(const GameConfig& config,
                                                     const GameState& state);

/// One uniformly random legal move (size first, then the dots).
[[nodiscard]] std::vector<std::size_t> random_move(const GameConfig& config, const GameState& state,
                                                   std::mt19937_64& rng);

struct WinnerReport {
  bool exhaustive = false;
  std::size_t cases = 0;
  std::size_t violations = 0;
};

/// Exhaustive over all terminal colorings with N dots each when 2N <= 8,
/// random playouts otherwise; counts terminal positions with no witness.
[[nodiscard]] WinnerReport winner_guarantee_check(const GameConfig& config,
                                                  std::size_t playouts = 10'000,
                                                  std::uint64_t seed = 1);

/// Random playouts to the end; counts games that finish without a loser.
[[nodiscard]] WinnerReport random_playouts(const GameConfig& config, std::size_t playouts,
                                           std::uint64_t seed);

}  // namespace chord
