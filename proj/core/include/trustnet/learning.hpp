#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "trustnet/game.hpp"
#include "trustnet/pareto.hpp"

namespace trustnet {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Half-open interval [lower, upper) believed to contain a neighbor's trust.
/// `upper` may be +inf; derived quantities clamp it to the system cap.
struct BoundInterval {
  double lower = 0.0;
  double upper = kUnbounded;

  bool contains(double delta) const { return lower <= delta && delta < upper; }
  /// Midpoint of [lower, min(upper, delta_max)].
  double estimate(double delta_max) const;
  /// min(upper, delta_max) - lower, never negative.
  double width(double delta_max) const;

  friend bool operator==(const BoundInterval&, const BoundInterval&) = default;
};

struct BoundUpdate {
  BoundInterval interval;
  bool changed = false;
};

/// Combines a prior with the interval [l, u) implied by one observation:
/// a disjoint observation replaces the prior and reports a change, an
/// overlapping one is intersected with it.
BoundUpdate merge_observation(BoundInterval prior, double l, double u);

/// Interval update after seeing the follower answer with column `observed`.
/// `frontier` is the follower's frontier in the played row. Throws
/// std::invalid_argument if the frontier is not ordered or does not contain
/// the observed strategy.
BoundUpdate leader_update_bounds(BoundInterval prior, std::span<const FrontierPoint> frontier,
                                 std::size_t observed);

/// Interval update after seeing the leader play row `observed`. `frontier` is
/// the leader's frontier of the m x 1 game it faced, i.e. built with the trust
/// the leader attributed to the follower.
BoundUpdate follower_update_bounds(BoundInterval prior, std::span<const FrontierPoint> frontier,
                                   std::size_t observed);

/// One game between me and a neighbor, from my side.
struct SharedGame {
  BimatrixGame game;
  std::size_t row = 0;
  std::size_t col = 0;
  bool i_led = false;
  /// Trust the leader attributed to the follower when choosing the row.
  double anticipated_follower_delta = 0.0;
};

/// Replays the neighbor's updates over our common history, giving the
/// interval the neighbor holds for my trust level.
BoundInterval reconstruct_my_estimate_in_their_eyes(std::span<const SharedGame> history);

/// What one agent knows about one neighbor.
struct NeighborKnowledge {
  BoundInterval view;    // my interval for the neighbor's trust
  BoundInterval mirror;  // the neighbor's interval for my trust, replayed
  std::int64_t last_change = -1;  // round of the last change flag, -1 if none
  std::uint64_t games = 0;
};

/// Per-agent knowledge of every 1-hop neighbor.
class KnowledgeState {
 public:
  KnowledgeState() = default;
  explicit KnowledgeState(std::vector<std::size_t> neighbors);

  const std::vector<std::size_t>& neighbors() const { return neighbors_; }
  NeighborKnowledge& at(std::size_t neighbor);
  const NeighborKnowledge& at(std::size_t neighbor) const;
  bool knows(std::size_t neighbor) const;

  /// True if some neighbor's interval changed within `window` rounds of `round`.
  bool recent_change(std::uint64_t round, std::uint64_t window) const;

 private:
  std::size_t slot(std::size_t neighbor) const;

  std::vector<std::size_t> neighbors_;
  std::vector<NeighborKnowledge> entries_;
};

/// Applies the updates both sides make after one game: the leader refines its
/// view of the follower from the column, the follower its view of the leader
/// from the row, and each side replays the other's update into its mirror.
/// `anticipated_follower_delta` is the leader's estimate when it chose the
/// row; the follower knows it from its mirror as of the start of the round.
void record_interaction(KnowledgeState& leader_state, std::size_t leader,
                        KnowledgeState& follower_state, std::size_t follower,
                        const BimatrixGame& game, std::size_t row, std::size_t col,
                        double anticipated_follower_delta, std::uint64_t round);

}  // namespace trustnet
