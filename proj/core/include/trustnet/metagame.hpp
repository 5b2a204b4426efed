#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "trustnet/estimator.hpp"
#include "trustnet/network.hpp"
#include "trustnet/round.hpp"

namespace trustnet {

/// Candidate trust levels an agent considers: an even grid on [0, delta_max].
struct DeltaSearchConfig {
  double delta_max = 30.0;
  std::size_t grid_points = 61;
  std::size_t samples = 1000;  // games behind each expected-utility estimate

  std::vector<double> grid() const;
  void validate() const;
};

/// Everything agent i uses to predict the outcome of a trust level: its
/// neighbors' (believed) trust toward i, their budgets, and the trust levels
/// each neighbor believes its other neighbors hold (gossip).
struct NeighborhoodView {
  struct Rival {
    std::size_t id = 0;
    double delta = 0.0;
  };
  struct Neighbor {
    std::size_t id = 0;
    double delta = 0.0;       // neighbor's trust as agent i believes it
    std::size_t budget = 0;   // neighbor's k_j
    std::vector<Rival> rivals;  // neighbor's other neighbors, as the neighbor believes them
  };

  std::size_t self = 0;
  std::size_t budget = 0;
  std::vector<Neighbor> neighbors;
};

/// View built from true trust levels.
NeighborhoodView known_view(const SocialNetwork& network, std::span<const AgentState> agents,
                            std::size_t self);

/// Predicted payoff of agent i at one candidate trust level.
struct GridEvaluation {
  double delta = 0.0;
  double v = 0.0;  // expected utility from games i leads
  double w = 0.0;  // expected utility from games i follows
  double games_led = 0.0;
  double games_followed = 0.0;

  double utility() const { return v + w; }
};

/// Probability that `neighbor` invites the agent when the agent's trust toward
/// it is `delta`. Under uniform ties an agent tied with t-1 rivals for the
/// last s slots is invited with probability s / t.
double invitation_probability(const NeighborhoodView& view,
                              const NeighborhoodView::Neighbor& neighbor, double delta,
                              const UtilityEstimator& estimator, RoundSettings settings);

/// Expected leader utility of the agent's own best invitations at `delta`.
GridEvaluation evaluate_delta(const NeighborhoodView& view, double delta,
                              const UtilityEstimator& estimator, RoundSettings settings);

std::vector<GridEvaluation> evaluate_delta_grid(const NeighborhoodView& view,
                                                std::span<const double> grid,
                                                const UtilityEstimator& estimator,
                                                RoundSettings settings);

/// Grid argmax of v + w; ties go to the lowest trust level.
double best_response_delta(const NeighborhoodView& view, const DeltaSearchConfig& config,
                           const UtilityEstimator& estimator, RoundSettings settings);

/// Per-neighbor trust levels. The follower-only optimum toward j maximizes
/// P(j invites i) * max(0, u_i); the leader-and-follower optimum adds i's own
/// leader utility when j would accept. The min(k_i, |N_i|) neighbors with the
/// largest gain from the second get it; the others get the first.
std::map<std::size_t, double> personalized_delta_profile(const NeighborhoodView& view,
                                                         const DeltaSearchConfig& config,
                                                         const UtilityEstimator& estimator,
                                                         RoundSettings settings);

}  // namespace trustnet
