#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "trustnet/config.hpp"
#include "trustnet/distribution.hpp"
#include "trustnet/dynamics.hpp"
#include "trustnet/network.hpp"
#include "trustnet/rates.hpp"

namespace trustnet {

inline constexpr int kSchemaVersion = 1;

/// Full description of one simulation run. Agent ids in `delta_overrides`
/// and `pinned` are vertex labels.
struct ExperimentConfig {
  std::string name = "custom";
  std::uint64_t seed = 0;
  std::uint64_t rounds = 1000;
  std::uint64_t warmup = 0;
  /// "builtin:<name>" or "file:<path>"; relative paths resolve against base_dir.
  std::string network = "builtin:example7";
  std::filesystem::path base_dir;
  std::size_t budget = 2;
  GameDistribution distribution = GameDistribution::exponential(2.0);
  std::size_t samples = 1000;
  std::uint64_t estimator_seed = 0;
  double initial_delta = 0.0;
  std::map<long long, double> delta_overrides;
  ScheduleKind schedule = ScheduleKind::fixed;
  std::uint64_t epoch_length = 100;
  double update_probability = 0.01;
  KnowledgeMode knowledge = KnowledgeMode::known;
  TieRule tie = TieRule::uniform_random;
  InviteRanking ranking = InviteRanking::trust;
  bool personalized = false;
  std::map<long long, double> pinned;
  double delta_max = 30.0;
  std::size_t grid_points = 61;
  ExplorationPolicy exploration;

  /// Reads every recognised key; unknown keys and a missing
  /// `experiment.seed` raise ConfigError.
  static ExperimentConfig from_document(const KeyValueDocument& doc,
                                        const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);

  /// Every setting, defaults included, in the same `key = value` format.
  std::string to_text() const;
  void validate() const;

  SocialNetwork load_network() const;
  /// Settings for run_dynamics on `network`.
  DynamicsConfig dynamics(const SocialNetwork& network, std::size_t workers) const;
};

/// Names accepted by preset().
std::vector<std::string> preset_names();

/// Named runs of a preset. Most presets hold one run; table1 and table3 hold
/// one per trust configuration. Throws std::invalid_argument for an unknown name.
std::vector<ExperimentConfig> preset(const std::string& name, std::uint64_t seed);

struct AgentSummary {
  long long label = 0;
  std::size_t degree = 0;
  double mean_delta = 0.0;
  double mean_v = 0.0;
  double mean_w = 0.0;
  double mean_utility = 0.0;
  double fraction_at_delta_max = 0.0;
  double games_led = 0.0;
  double games_followed = 0.0;
};

/// Averages over the rounds after the warmup.
struct ExperimentSummary {
  std::uint64_t rounds = 0;
  std::uint64_t warmup = 0;
  std::size_t agents = 0;
  double avg_utility = 0.0;  // per agent per round
  double mean_delta = 0.0;
  double final_mean_delta = 0.0;
  double fraction_at_delta_max = 0.0;
  std::vector<AgentSummary> per_agent;
};

ExperimentSummary summarize(const std::vector<std::vector<AgentRound>>& rounds,
                            const SocialNetwork& network, std::uint64_t warmup,
                            double delta_max);

struct ExperimentResult {
  ExperimentConfig config;
  SocialNetwork network;
  std::vector<std::vector<AgentRound>> rounds;
  /// Games played per ordered (leader, follower) pair after the warmup.
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> pair_games;
  ExperimentSummary summary;
};

/// `workers` only changes speed, never results.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers = 1);

/// Writes rounds.csv, degree_delta.csv, agents.csv, pairs.csv, summary.csv
/// and config.resolved into `dir`. Files go to `<dir>.partial` first, which
/// replaces `dir` only after every file is written.
void write_bundle(const ExperimentResult& result, const std::filesystem::path& dir);

/// Recomputes the summary of a bundle directory from rounds.csv and config.resolved.
ExperimentSummary summarize_bundle(const std::filesystem::path& dir);

std::string summary_csv(const ExperimentSummary& summary);

namespace csv_header {
inline constexpr const char* rounds = "round,agent,delta,v,w,u,games_led,games_followed";
inline constexpr const char* degree_delta = "round,degree,agents,mean_delta";
inline constexpr const char* agents =
    "agent,degree,mean_delta,mean_v,mean_w,mean_utility,fraction_at_delta_max,games_led,"
    "games_followed";
inline constexpr const char* pairs = "leader,follower,games";
inline constexpr const char* summary = "metric,value";
inline constexpr const char* sweep = "delta,v,w,u,games_led,games_followed";
inline constexpr const char* rates =
    "n,delta2,epsilon,p_lower,p_upper,p_both,t_bound,t_bound_se,empirical_mean,stderr,"
    "censored_count,trials";
}  // namespace csv_header

/// Utility of one agent against trust levels of all others drawn uniformly
/// from the grid (seeded by `sweep_seed`), as a function of its own trust.
std::vector<GridEvaluation> sweep_delta(const ExperimentConfig& config, long long agent_label,
                                        std::uint64_t sweep_seed);

std::string sweep_csv(const std::vector<GridEvaluation>& rows);

/// Parameters of the learning-rate study.
struct RateStudyConfig {
  GameDistribution distribution = GameDistribution::exponential(2.0, 1, 2);
  std::vector<double> columns{2, 5, 20};
  std::vector<double> delta2{0.5, 2.0};
  std::vector<double> epsilon{0.1, 0.5};
  std::size_t probability_trials = 200000;
  std::size_t time_trials = 2000;
  std::size_t rows = 1;
  RowPolicy policy = RowPolicy::random_row;
  double delta_max = 30.0;
  std::uint64_t max_rounds = 1'000'000;
  std::uint64_t seed = 0;

  static RateStudyConfig from_document(const KeyValueDocument& doc);
};

struct RateRow {
  std::size_t n = 0;
  double delta2 = 0.0;
  double epsilon = 0.0;
  DiscoveryProbabilities probabilities;
  TimeBound bound;
  DiscoveryTime time;

  /// Empirical mean within three combined standard errors of the bound.
  bool within_bound() const;
};

std::vector<RateRow> run_rate_study(const RateStudyConfig& config, std::size_t workers = 1);
std::string rates_csv(const std::vector<RateRow>& rows);

/// Writes `text` to `path` through a temporary file and a rename.
void write_file_atomically(const std::filesystem::path& path, const std::string& text);

}  // namespace trustnet
