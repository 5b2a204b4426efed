#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "trustnet/estimator.hpp"
#include "trustnet/exploration.hpp"
#include "trustnet/learning.hpp"
#include "trustnet/metagame.hpp"
#include "trustnet/network.hpp"
#include "trustnet/round.hpp"

namespace trustnet {

/// When agents revise their trust level. `fixed` never revises.
enum class ScheduleKind { fixed, synchronous, epoch, probabilistic };

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(const std::string& text);

struct UpdateSchedule {
  ScheduleKind kind = ScheduleKind::synchronous;
  std::uint64_t epoch_length = 100;
  double probability = 0.01;

  void validate() const;
};

/// Agents whose trust level is held at a fixed value.
struct SeedConstraint {
  std::map<std::size_t, double> pinned;  // agent index -> trust level

  bool contains(std::size_t agent) const { return pinned.count(agent) != 0; }
};

/// Whether agents see true trust levels or learn them from play.
enum class KnowledgeMode { known, learned };

std::string to_string(KnowledgeMode mode);
KnowledgeMode parse_knowledge_mode(const std::string& text);

struct DynamicsConfig {
  UpdateSchedule schedule;
  SeedConstraint seeds;
  KnowledgeMode knowledge = KnowledgeMode::known;
  RoundSettings round;
  DeltaSearchConfig search;
  ExplorationPolicy exploration;
  /// Per-neighbor trust levels (known mode only).
  bool personalized = false;
  std::size_t budget = 2;
  /// Trust levels before the first round; empty means all zero.
  std::vector<double> initial_delta;
  std::uint64_t rounds = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  void validate(std::size_t agent_count) const;
};

/// One agent in one round.
struct AgentRound {
  double delta = 0.0;  // trust level played this round
  double v = 0.0;
  double w = 0.0;
  std::uint32_t games_led = 0;
  std::uint32_t games_followed = 0;
  bool updated = false;  // revised its trust level after this round

  double utility() const { return v + w; }
};

struct DynamicsResult {
  std::vector<std::vector<AgentRound>> rounds;  // [round][agent]
  std::vector<AgentState> final_agents;
  std::vector<KnowledgeState> final_knowledge;  // learned mode only
};

/// Called after every round with the round index (from 1), the round's
/// ledger, and the per-agent summary.
using RoundObserver =
    std::function<void(std::uint64_t, const RoundRecord&, const std::vector<AgentRound>&)>;

/// Plays `config.rounds` rounds. Round t uses the trust levels chosen after
/// round t-1; agents start at zero (pinned agents at their pinned value).
/// After each round the agents due per the schedule best-respond to the
/// trust levels of that round, using true values (known) or their interval
/// estimates plus their neighbors' gossip (learned).
DynamicsResult run_dynamics(const SocialNetwork& network, const UtilityEstimator& estimator,
                            const DynamicsConfig& config, const RoundObserver& observer = {});

/// View of agent i built from interval estimates: its own estimates of its
/// neighbors and each neighbor's estimates of the neighbor's other neighbors.
NeighborhoodView learned_view(const SocialNetwork& network, std::span<const AgentState> agents,
                              std::span<const KnowledgeState> knowledge, std::size_t self,
                              double delta_max);

}  // namespace trustnet
