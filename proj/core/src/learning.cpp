#include "trustnet/learning.hpp"

#include <algorithm>
#include <stdexcept>

namespace trustnet {

namespace {

// Both updates share the arithmetic: position p on the frontier means
// primary[0] - primary[p] <= delta < primary[0] - primary[p + 1].
BoundUpdate frontier_update(BoundInterval prior, std::span<const FrontierPoint> frontier,
                            std::size_t observed) {
  if (frontier.empty() || !is_ordered_frontier(frontier)) {
    throw std::invalid_argument("bound update requires an ordered, non-empty frontier");
  }
  const std::size_t p = frontier_position(frontier, observed);
  if (p == frontier.size()) {
    throw std::invalid_argument("observed strategy is not on the frontier");
  }
  const double top = frontier.front().primary;
  const double l = top - frontier[p].primary;
  const double u = p + 1 < frontier.size() ? top - frontier[p + 1].primary : kUnbounded;
  return merge_observation(prior, l, u);
}

}  // namespace

double BoundInterval::estimate(double delta_max) const {
  const double hi = std::min(upper, delta_max);
  const double lo = std::min(lower, hi);
  return (lo + hi) / 2.0;
}

double BoundInterval::width(double delta_max) const {
  return std::max(0.0, std::min(upper, delta_max) - lower);
}

BoundUpdate merge_observation(BoundInterval prior, double l, double u) {
  if (l >= prior.upper || u <= prior.lower) {
    return {{l, u}, true};
  }
  return {{std::max(prior.lower, l), std::min(prior.upper, u)}, false};
}

BoundUpdate leader_update_bounds(BoundInterval prior, std::span<const FrontierPoint> frontier,
                                 std::size_t observed) {
  return frontier_update(prior, frontier, observed);
}

BoundUpdate follower_update_bounds(BoundInterval prior, std::span<const FrontierPoint> frontier,
                                   std::size_t observed) {
  return frontier_update(prior, frontier, observed);
}

BoundInterval reconstruct_my_estimate_in_their_eyes(std::span<const SharedGame> history) {
  BoundInterval interval;
  for (const SharedGame& g : history) {
    if (g.i_led) {
      const auto frontier = leader_frontier(g.game, TrustLevel(g.anticipated_follower_delta));
      interval = follower_update_bounds(interval, frontier, g.row).interval;
    } else {
      const auto frontier = follower_frontier(g.game, g.row);
      interval = leader_update_bounds(interval, frontier, g.col).interval;
    }
  }
  return interval;
}

KnowledgeState::KnowledgeState(std::vector<std::size_t> neighbors)
    : neighbors_(std::move(neighbors)) {
  std::sort(neighbors_.begin(), neighbors_.end());
  neighbors_.erase(std::unique(neighbors_.begin(), neighbors_.end()), neighbors_.end());
  entries_.resize(neighbors_.size());
}

std::size_t KnowledgeState::slot(std::size_t neighbor) const {
  auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), neighbor);
  if (it == neighbors_.end() || *it != neighbor) {
    throw std::out_of_range("no knowledge kept for a non-neighbor");
  }
  return static_cast<std::size_t>(it - neighbors_.begin());
}

NeighborKnowledge& KnowledgeState::at(std::size_t neighbor) { return entries_[slot(neighbor)]; }

const NeighborKnowledge& KnowledgeState::at(std::size_t neighbor) const {
  return entries_[slot(neighbor)];
}

bool KnowledgeState::knows(std::size_t neighbor) const {
  return std::binary_search(neighbors_.begin(), neighbors_.end(), neighbor);
}

bool KnowledgeState::recent_change(std::uint64_t round, std::uint64_t window) const {
  for (const auto& e : entries_) {
    if (e.last_change >= 0 && round - static_cast<std::uint64_t>(e.last_change) < window) {
      return true;
    }
  }
  return false;
}

void record_interaction(KnowledgeState& leader_state, std::size_t leader,
                        KnowledgeState& follower_state, std::size_t follower,
                        const BimatrixGame& game, std::size_t row, std::size_t col,
                        double anticipated_follower_delta, std::uint64_t round) {
  NeighborKnowledge& lk = leader_state.at(follower);
  NeighborKnowledge& fk = follower_state.at(leader);

  const auto columns = follower_frontier(game, row);
  const BoundUpdate on_follower = leader_update_bounds(lk.view, columns, col);
  lk.view = on_follower.interval;
  fk.mirror = leader_update_bounds(fk.mirror, columns, col).interval;

  const auto rows = leader_frontier(game, TrustLevel(anticipated_follower_delta));
  const BoundUpdate on_leader = follower_update_bounds(fk.view, rows, row);
  fk.view = on_leader.interval;
  lk.mirror = follower_update_bounds(lk.mirror, rows, row).interval;

  const auto stamp = static_cast<std::int64_t>(round);
  if (on_follower.changed) lk.last_change = stamp;
  if (on_leader.changed) fk.last_change = stamp;
  ++lk.games;
  ++fk.games;
}

}  // namespace trustnet
