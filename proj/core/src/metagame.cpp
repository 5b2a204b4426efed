#include "trustnet/metagame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trustnet {

std::vector<double> DeltaSearchConfig::grid() const {
  validate();
  std::vector<double> out(grid_points);
  const double steps = static_cast<double>(grid_points - 1);
  for (std::size_t g = 0; g < grid_points; ++g) {
    out[g] = delta_max * static_cast<double>(g) / steps;
  }
  out.back() = delta_max;
  return out;
}

void DeltaSearchConfig::validate() const {
  if (!(delta_max >= 0.0) || !std::isfinite(delta_max)) {
    throw std::invalid_argument("delta_max must be finite and non-negative");
  }
  if (grid_points < 2) {
    throw std::invalid_argument("the trust grid needs at least two points");
  }
  if (samples == 0) {
    throw std::invalid_argument("estimation needs at least one sample per point");
  }
}

NeighborhoodView known_view(const SocialNetwork& network, std::span<const AgentState> agents,
                            std::size_t self) {
  NeighborhoodView view;
  view.self = self;
  view.budget = agents[self].budget;
  for (std::size_t j : network.neighbors(self)) {
    NeighborhoodView::Neighbor nb{j, agents[j].delta_for(self), agents[j].budget, {}};
    for (std::size_t l : network.neighbors(j)) {
      if (l != self) nb.rivals.push_back({l, agents[l].delta_for(j)});
    }
    view.neighbors.push_back(std::move(nb));
  }
  return view;
}

double invitation_probability(const NeighborhoodView& view,
                              const NeighborhoodView::Neighbor& neighbor, double delta,
                              const UtilityEstimator& estimator, RoundSettings settings) {
  if (neighbor.budget == 0) return 0.0;
  auto acceptable = [&](const ExpectedUtilities& e) {
    return e.leader >= 0.0 && accept_invitation(e.follower);
  };
  auto key = [&](double d, const ExpectedUtilities& e) {
    return settings.ranking == InviteRanking::trust ? d : e.leader;
  };
  const ExpectedUtilities mine = estimator.expected(neighbor.delta, delta);
  if (!acceptable(mine)) return 0.0;
  const double my_key = key(delta, mine);
  std::size_t better = 0;
  std::size_t tied = 1;
  std::size_t tied_before = 0;
  for (const auto& rival : neighbor.rivals) {
    const ExpectedUtilities e = estimator.expected(neighbor.delta, rival.delta);
    if (!acceptable(e)) continue;
    const double k = key(rival.delta, e);
    if (k > my_key) {
      ++better;
    } else if (k == my_key) {
      ++tied;
      if (rival.id < view.self) ++tied_before;
    }
  }
  const std::size_t slots = neighbor.budget;
  if (settings.tie == TieRule::lexicographic) {
    return better + tied_before < slots ? 1.0 : 0.0;
  }
  if (better >= slots) return 0.0;
  if (better + tied <= slots) return 1.0;
  return static_cast<double>(slots - better) / static_cast<double>(tied);
}

GridEvaluation evaluate_delta(const NeighborhoodView& view, double delta,
                              const UtilityEstimator& estimator, RoundSettings settings) {
  GridEvaluation out;
  out.delta = delta;
  std::vector<InvitationOption> options;
  options.reserve(view.neighbors.size());
  for (const auto& nb : view.neighbors) {
    const ExpectedUtilities lead = estimator.expected(delta, nb.delta);
    options.push_back({nb.id, nb.delta, lead.leader, lead.follower});
    const double p = invitation_probability(view, nb, delta, estimator, settings);
    if (p > 0.0) {
      out.w += p * estimator.expected(nb.delta, delta).follower;
      out.games_followed += p;
    }
  }
  // Tied options carry identical utilities, so any tie resolution gives the same sum.
  Rng unused(0);
  const auto chosen =
      select_invitations(options, view.budget, settings.ranking, TieRule::lexicographic, unused);
  for (const auto& o : options) {
    if (std::binary_search(chosen.begin(), chosen.end(), o.neighbor)) {
      out.v += o.leader_utility;
      out.games_led += 1.0;
    }
  }
  return out;
}

std::vector<GridEvaluation> evaluate_delta_grid(const NeighborhoodView& view,
                                                std::span<const double> grid,
                                                const UtilityEstimator& estimator,
                                                RoundSettings settings) {
  std::vector<GridEvaluation> out;
  out.reserve(grid.size());
  for (double d : grid) out.push_back(evaluate_delta(view, d, estimator, settings));
  return out;
}

double best_response_delta(const NeighborhoodView& view, const DeltaSearchConfig& config,
                           const UtilityEstimator& estimator, RoundSettings settings) {
  const auto grid = config.grid();
  double best_delta = grid.front();
  double best_value = -std::numeric_limits<double>::infinity();
  for (double d : grid) {
    const double value = evaluate_delta(view, d, estimator, settings).utility();
    if (value > best_value) {
      best_value = value;
      best_delta = d;
    }
  }
  return best_delta;
}

std::map<std::size_t, double> personalized_delta_profile(const NeighborhoodView& view,
                                                         const DeltaSearchConfig& config,
                                                         const UtilityEstimator& estimator,
                                                         RoundSettings settings) {
  const auto grid = config.grid();
  struct Choice {
    std::size_t id;
    double follower_delta;
    double leader_delta;
    double gain;
  };
  std::vector<Choice> choices;
  for (const auto& nb : view.neighbors) {
    double best_f = -std::numeric_limits<double>::infinity();
    double best_l = best_f;
    Choice c{nb.id, grid.front(), grid.front(), 0.0};
    for (double d : grid) {
      const double p = invitation_probability(view, nb, d, estimator, settings);
      const double as_follower = p * std::max(0.0, estimator.expected(nb.delta, d).follower);
      const ExpectedUtilities lead = estimator.expected(d, nb.delta);
      const double as_both = as_follower + (accept_invitation(lead.follower) ? lead.leader : 0.0);
      if (as_follower > best_f) {
        best_f = as_follower;
        c.follower_delta = d;
      }
      if (as_both > best_l) {
        best_l = as_both;
        c.leader_delta = d;
      }
    }
    c.gain = best_l - best_f;
    choices.push_back(c);
  }
  std::vector<std::size_t> order(choices.size());
  for (std::size_t o = 0; o < order.size(); ++o) order[o] = o;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return choices[x].gain != choices[y].gain ? choices[x].gain > choices[y].gain
                                              : choices[x].id < choices[y].id;
  });
  const std::size_t slots = std::min(view.budget, choices.size());
  std::map<std::size_t, double> profile;
  for (std::size_t r = 0; r < order.size(); ++r) {
    const Choice& c = choices[order[r]];
    profile[c.id] = r < slots ? c.leader_delta : c.follower_delta;
  }
  return profile;
}

}  // namespace trustnet
