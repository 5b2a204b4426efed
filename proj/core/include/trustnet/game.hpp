#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace trustnet {

/// Willingness of a player to give up utility relative to its greedy best
/// response, in utility units. Always non-negative; +inf is allowed and means
/// "always maximize net utility".
class TrustLevel {
 public:
  constexpr TrustLevel() = default;
  explicit TrustLevel(double value);

  constexpr double value() const { return value_; }

  friend constexpr bool operator==(TrustLevel, TrustLevel) = default;
  friend constexpr auto operator<=>(TrustLevel a, TrustLevel b) { return a.value_ <=> b.value_; }

 private:
  double value_ = 0.0;
};

/// Dense leader/follower payoff matrices of one leader-follower interaction.
/// Rows are leader strategies, columns follower strategies.
class BimatrixGame {
 public:
  BimatrixGame() = default;
  BimatrixGame(std::size_t rows, std::size_t cols);
  BimatrixGame(std::size_t rows, std::size_t cols, std::vector<double> leader,
               std::vector<double> follower);

  /// Builds a game from rows of (leader payoff, follower payoff) cells.
  static BimatrixGame from_cells(
      std::initializer_list<std::initializer_list<std::pair<double, double>>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double leader(std::size_t r, std::size_t c) const { return leader_[r * cols_ + c]; }
  double follower(std::size_t r, std::size_t c) const { return follower_[r * cols_ + c]; }
  double& leader(std::size_t r, std::size_t c) { return leader_[r * cols_ + c]; }
  double& follower(std::size_t r, std::size_t c) { return follower_[r * cols_ + c]; }
  double net(std::size_t r, std::size_t c) const { return leader(r, c) + follower(r, c); }

  /// Throws std::invalid_argument if a dimension is zero or an entry is not finite.
  void validate() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> leader_;
  std::vector<double> follower_;
};

/// Strategies and payoffs of a limited-trust Stackelberg equilibrium.
struct LtseOutcome {
  std::size_t leader_strategy = 0;
  std::size_t follower_strategy = 0;
  double leader_utility = 0.0;
  double follower_utility = 0.0;

  friend bool operator==(const LtseOutcome&, const LtseOutcome&) = default;
};

/// Column maximizing the follower's own payoff in `leader_strategy`'s row.
/// Ties go to the lowest column index.
std::size_t greedy_follower_response(const BimatrixGame& game, std::size_t leader_strategy);

/// Limited-trust response: the column with the highest net payoff among those
/// costing the follower at most `trust` relative to its greedy column.
/// Ties prefer higher follower payoff, then the lowest index.
std::size_t follower_ltse_response(const BimatrixGame& game, std::size_t leader_strategy,
                                   TrustLevel trust);

/// Leader's limited-trust strategy given its own trust and the trust it
/// attributes to the follower, paired with the follower's response to it.
///
/// The leader anticipates the response `follower_ltse_response(row, follower)`
/// for every row, finds its greedy row, and then picks the row with the best
/// net payoff among rows costing it at most `leader` relative to the greedy
/// row. Ties prefer higher leader payoff, then the lowest index.
LtseOutcome leader_ltse_strategy(const BimatrixGame& game, TrustLevel leader, TrustLevel follower);

/// Leader row chosen against an anticipated follower trust, with the follower
/// then answering at its actual trust. Equals `leader_ltse_strategy` when the
/// anticipated and actual trust coincide.
LtseOutcome play_ltse(const BimatrixGame& game, TrustLevel leader, TrustLevel anticipated_follower,
                      TrustLevel actual_follower);

}  // namespace trustnet
