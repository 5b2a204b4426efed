#include "trustnet/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "trustnet/parallel.hpp"

namespace trustnet {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::fixed:
      return "fixed";
    case ScheduleKind::synchronous:
      return "synchronous";
    case ScheduleKind::epoch:
      return "epoch";
    case ScheduleKind::probabilistic:
      return "probabilistic";
  }
  return "?";
}

ScheduleKind parse_schedule_kind(const std::string& text) {
  if (text == "fixed") return ScheduleKind::fixed;
  if (text == "synchronous") return ScheduleKind::synchronous;
  if (text == "epoch") return ScheduleKind::epoch;
  if (text == "probabilistic") return ScheduleKind::probabilistic;
  throw std::invalid_argument("unknown update schedule '" + text + "'");
}

std::string to_string(KnowledgeMode mode) {
  return mode == KnowledgeMode::known ? "known" : "learned";
}

KnowledgeMode parse_knowledge_mode(const std::string& text) {
  if (text == "known") return KnowledgeMode::known;
  if (text == "learned") return KnowledgeMode::learned;
  throw std::invalid_argument("unknown knowledge mode '" + text + "'");
}

void UpdateSchedule::validate() const {
  if (epoch_length == 0) {
    throw std::invalid_argument("epoch length must be at least 1");
  }
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("update probability must lie in (0, 1]");
  }
}

void DynamicsConfig::validate(std::size_t agent_count) const {
  schedule.validate();
  search.validate();
  exploration.validate();
  if (!initial_delta.empty() && initial_delta.size() != agent_count) {
    throw std::invalid_argument("initial trust levels must list every agent");
  }
  for (double d : initial_delta) {
    if (!(d >= 0.0 && d <= search.delta_max)) {
      throw std::invalid_argument("initial trust levels must lie in [0, delta_max]");
    }
  }
  for (const auto& [agent, d] : seeds.pinned) {
    if (agent >= agent_count) {
      throw std::invalid_argument("pinned agent outside the network");
    }
    if (!(d >= 0.0 && d <= search.delta_max)) {
      throw std::invalid_argument("pinned trust levels must lie in [0, delta_max]");
    }
  }
  if (personalized && knowledge != KnowledgeMode::known) {
    throw std::invalid_argument("personalized trust requires known trust levels");
  }
}

NeighborhoodView learned_view(const SocialNetwork& network, std::span<const AgentState> agents,
                              std::span<const KnowledgeState> knowledge, std::size_t self,
                              double delta_max) {
  NeighborhoodView view;
  view.self = self;
  view.budget = agents[self].budget;
  for (std::size_t j : network.neighbors(self)) {
    NeighborhoodView::Neighbor nb{j, knowledge[self].at(j).view.estimate(delta_max),
                                  agents[j].budget, {}};
    for (std::size_t l : network.neighbors(j)) {
      if (l != self) nb.rivals.push_back({l, knowledge[j].at(l).view.estimate(delta_max)});
    }
    view.neighbors.push_back(std::move(nb));
  }
  return view;
}

namespace {

std::vector<Invitation> plan_learned_invitations(const SocialNetwork& network,
                                                 std::span<const AgentState> agents,
                                                 std::span<const KnowledgeState> knowledge,
                                                 const UtilityEstimator& estimator,
                                                 const DynamicsConfig& config, std::uint64_t t) {
  const double delta_max = config.search.delta_max;
  std::vector<Invitation> out;
  std::vector<InvitationOption> options;
  std::vector<double> widths;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    options.clear();
    widths.clear();
    for (std::size_t j : network.neighbors(i)) {
      const BoundInterval& view = knowledge[i].at(j).view;
      const double believed = view.estimate(delta_max);
      const ExpectedUtilities e = estimator.expected(agents[i].delta, believed);
      options.push_back({j, believed, e.leader, e.follower});
      widths.push_back(view.width(delta_max));
    }
    Rng rng(derive_seed(config.seed, {stream::explore, t, i}));
    const bool recent = knowledge[i].recent_change(t, config.exploration.recency_window);
    const ScheduledInvitations plan =
        schedule_round(options, widths, agents[i].budget, config.exploration, t, recent,
                       config.round.ranking, config.round.tie, rng);
    auto invite = [&](std::size_t j, bool explore) {
      const double their_view = knowledge[j].at(i).view.estimate(delta_max);
      if (!accept_invitation(estimator.expected(their_view, agents[j].delta).follower)) return;
      out.push_back({i, j, knowledge[i].at(j).view.estimate(delta_max), explore});
    };
    for (std::size_t j : plan.exploit) invite(j, false);
    for (std::size_t j : plan.explore) invite(j, true);
  }
  return out;
}

std::vector<bool> due_agents(const DynamicsConfig& config, std::size_t n, std::uint64_t t) {
  std::vector<bool> due(n, false);
  switch (config.schedule.kind) {
    case ScheduleKind::fixed:
      break;
    case ScheduleKind::synchronous:
      due.assign(n, true);
      break;
    case ScheduleKind::epoch:
      if (t % config.schedule.epoch_length == 0) due.assign(n, true);
      break;
    case ScheduleKind::probabilistic: {
      Rng rng(derive_seed(config.seed, {stream::update, t}));
      for (std::size_t i = 0; i < n; ++i) due[i] = rng.bernoulli(config.schedule.probability);
      break;
    }
  }
  for (const auto& [agent, d] : config.seeds.pinned) due[agent] = false;
  return due;
}

}  // namespace

DynamicsResult run_dynamics(const SocialNetwork& network, const UtilityEstimator& estimator,
                            const DynamicsConfig& config, const RoundObserver& observer) {
  const std::size_t n = network.size();
  config.validate(n);
  const double delta_max = config.search.delta_max;

  std::vector<AgentState> agents = make_agents(network, config.budget);
  for (std::size_t i = 0; i < n; ++i) {
    if (!config.initial_delta.empty()) agents[i].delta = config.initial_delta[i];
  }
  for (const auto& [agent, d] : config.seeds.pinned) agents[agent].delta = d;

  std::vector<KnowledgeState> knowledge;
  if (config.knowledge == KnowledgeMode::learned) {
    knowledge.reserve(n);
    for (std::size_t i = 0; i < n; ++i) knowledge.emplace_back(network.neighbors(i));
  }

  DynamicsResult result;
  result.rounds.reserve(config.rounds);
  std::vector<AgentState> next;
  for (std::uint64_t t = 1; t <= config.rounds; ++t) {
    const std::vector<Invitation> invitations =
        config.knowledge == KnowledgeMode::known
            ? plan_known_invitations(network, agents, estimator, config.round, t, config.seed)
            : plan_learned_invitations(network, agents, knowledge, estimator, config, t);
    const RoundRecord record = realize_round(agents, invitations, estimator.distribution(), t,
                                             config.seed, config.workers);

    if (config.knowledge == KnowledgeMode::learned) {
      for (const PlayedGame& g : record.games) {
        const std::size_t l = g.invitation.leader;
        const std::size_t f = g.invitation.follower;
        record_interaction(knowledge[l], l, knowledge[f], f, g.game, g.outcome.leader_strategy,
                           g.outcome.follower_strategy, g.invitation.anticipated_follower_delta, t);
      }
    }

    std::vector<AgentRound> summary(n);
    for (std::size_t i = 0; i < n; ++i) {
      summary[i].delta = agents[i].delta;
      summary[i].v = record.v[i];
      summary[i].w = record.w[i];
      summary[i].games_led = static_cast<std::uint32_t>(record.invites[i].size());
      summary[i].games_followed = static_cast<std::uint32_t>(record.invited_by[i].size());
      agents[i].accumulated_utility += record.utility(i);
    }

    const std::vector<bool> due = due_agents(config, n, t);
    std::vector<std::size_t> movers;
    for (std::size_t i = 0; i < n; ++i) {
      if (due[i]) movers.push_back(i);
    }
    next = agents;
    parallel_for(movers.size(), config.workers, [&](std::size_t m) {
      const std::size_t i = movers[m];
      const NeighborhoodView view = config.knowledge == KnowledgeMode::known
                                        ? known_view(network, agents, i)
                                        : learned_view(network, agents, knowledge, i, delta_max);
      if (config.personalized) {
        auto profile = personalized_delta_profile(view, config.search, estimator, config.round);
        double sum = 0.0;
        for (const auto& [j, d] : profile) sum += d;
        next[i].delta = profile.empty() ? 0.0 : sum / static_cast<double>(profile.size());
        next[i].toward = std::move(profile);
      } else {
        next[i].delta = best_response_delta(view, config.search, estimator, config.round);
      }
    });
    for (std::size_t i : movers) summary[i].updated = true;
    agents.swap(next);

    if (observer) observer(t, record, summary);
    result.rounds.push_back(std::move(summary));
  }
  result.final_agents = std::move(agents);
  result.final_knowledge = std::move(knowledge);
  return result;
}

}  // namespace trustnet
