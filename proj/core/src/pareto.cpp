#include "trustnet/pareto.hpp"

#include <algorithm>

namespace trustnet {

std::vector<FrontierPoint> pareto_frontier(std::span<const FrontierPoint> points) {
  std::vector<FrontierPoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const FrontierPoint& x, const FrontierPoint& y) {
    if (x.primary != y.primary) return x.primary > y.primary;
    if (x.net != y.net) return x.net > y.net;
    return x.index < y.index;
  });

  std::vector<FrontierPoint> frontier;
  for (const auto& p : sorted) {
    if (frontier.empty() || p.net > frontier.back().net) {
      frontier.push_back(p);
    }
  }
  return frontier;
}

bool is_ordered_frontier(std::span<const FrontierPoint> frontier) {
  for (std::size_t i = 1; i < frontier.size(); ++i) {
    if (!(frontier[i].primary < frontier[i - 1].primary) ||
        !(frontier[i].net > frontier[i - 1].net)) {
      return false;
    }
  }
  return true;
}

std::vector<FrontierPoint> follower_frontier(const BimatrixGame& game, std::size_t row) {
  std::vector<FrontierPoint> points;
  points.reserve(game.cols());
  for (std::size_t c = 0; c < game.cols(); ++c) {
    points.push_back({game.follower(row, c), game.net(row, c), c});
  }
  return pareto_frontier(points);
}

std::vector<FrontierPoint> leader_frontier(const BimatrixGame& game,
                                           TrustLevel anticipated_follower) {
  std::vector<FrontierPoint> points;
  points.reserve(game.rows());
  for (std::size_t r = 0; r < game.rows(); ++r) {
    const std::size_t c = follower_ltse_response(game, r, anticipated_follower);
    points.push_back({game.leader(r, c), game.net(r, c), r});
  }
  return pareto_frontier(points);
}

std::size_t frontier_position(std::span<const FrontierPoint> frontier, std::size_t index) {
  const auto it = std::find_if(frontier.begin(), frontier.end(),
                               [index](const FrontierPoint& p) { return p.index == index; });
  return static_cast<std::size_t>(it - frontier.begin());
}

}  // namespace trustnet
