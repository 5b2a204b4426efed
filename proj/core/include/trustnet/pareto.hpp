#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trustnet/game.hpp"

namespace trustnet {

/// A strategy measured by the deciding player's own payoff (`primary`) and the
/// joint payoff of both players (`net`).
struct FrontierPoint {
  double primary = 0.0;
  double net = 0.0;
  std::size_t index = 0;

  friend bool operator==(const FrontierPoint&, const FrontierPoint&) = default;
};

/// Maximal points under (primary, net) dominance. The result is ordered so that
/// primary strictly decreases and net strictly increases; duplicated points
/// keep the lowest original index.
std::vector<FrontierPoint> pareto_frontier(std::span<const FrontierPoint> points);

/// True when `frontier` is ordered the way `pareto_frontier` returns it.
bool is_ordered_frontier(std::span<const FrontierPoint> frontier);

/// Frontier of the follower's columns in `row`, measured in (follower, net).
std::vector<FrontierPoint> follower_frontier(const BimatrixGame& game, std::size_t row);

/// Frontier of the leader's rows in the m x 1 game the leader sees when it
/// expects the follower to answer at `anticipated_follower`; measured in
/// (leader, net).
std::vector<FrontierPoint> leader_frontier(const BimatrixGame& game,
                                           TrustLevel anticipated_follower);

/// Position of strategy `index` on `frontier`, or frontier.size() if absent.
std::size_t frontier_position(std::span<const FrontierPoint> frontier, std::size_t index);

}  // namespace trustnet
