#include "trustnet/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "trustnet/estimator.hpp"
#include "trustnet/parallel.hpp"

namespace trustnet {

namespace {

constexpr std::uint64_t kSweepStream = 0x73776570;  // "swep"
constexpr std::uint64_t kRateStream = 0x72617465;   // "rate"

std::map<long long, double> parse_label_map(const KeyValueDocument& doc, const std::string& key) {
  std::map<long long, double> out;
  const std::string* text = doc.find(key);
  if (!text || text->empty()) return out;
  std::istringstream items(*text);
  std::string item;
  while (std::getline(items, item, ',')) {
    const auto colon = item.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("expected label:value");
      const std::string label = item.substr(0, colon);
      const auto first = label.find_first_not_of(' ');
      if (first == std::string::npos) throw std::invalid_argument("missing label");
      const long long id = std::stoll(label.substr(first));
      if (!out.emplace(id, parse_double(item.substr(colon + 1))).second) {
        throw std::invalid_argument("label listed twice");
      }
    } catch (const std::exception& e) {
      throw ConfigError(doc.source() + ":" + std::to_string(doc.line_of(key)) + ": " + key +
                        ": bad entry '" + item + "': " + e.what());
    }
  }
  return out;
}

std::string format_label_map(const std::map<long long, double>& values) {
  std::string out;
  for (const auto& [label, value] : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(label) + ':' + format_double(value);
  }
  return out;
}

template <class T, class Parse>
T parse_enum(const KeyValueDocument& doc, const std::string& key, T fallback, Parse parse) {
  const std::string* v = doc.find(key);
  if (!v) return fallback;
  try {
    return parse(*v);
  } catch (const std::exception& e) {
    throw ConfigError(doc.source() + ":" + std::to_string(doc.line_of(key)) + ": " + key + ": " +
                      e.what());
  }
}

GameDistribution read_distribution(const KeyValueDocument& doc, GameDistribution d) {
  const std::string law = doc.get_string("distribution.law", d.law == EntryLaw::exponential
                                                                 ? "exponential"
                                                                 : "uniform");
  if (law == "exponential") {
    d.law = EntryLaw::exponential;
  } else if (law == "uniform") {
    d.law = EntryLaw::uniform;
  } else {
    throw ConfigError(doc.source() + ":" + std::to_string(doc.line_of("distribution.law")) +
                      ": distribution.law: expected exponential or uniform");
  }
  d.mean = doc.get_double("distribution.mean", d.mean);
  d.lo = doc.get_double("distribution.lo", d.lo);
  d.hi = doc.get_double("distribution.hi", d.hi);
  d.rows = doc.get_uint("distribution.rows", d.rows);
  d.cols = doc.get_uint("distribution.cols", d.cols);
  try {
    d.validate();
  } catch (const std::exception& e) {
    throw ConfigError(doc.source() + ": distribution: " + e.what());
  }
  return d;
}

void append(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  out += " = ";
  out += value;
  out += '\n';
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_document(const KeyValueDocument& doc,
                                                 const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  c.base_dir = base_dir;
  if (!doc.has("experiment.seed")) {
    throw ConfigError(doc.source() + ": experiment.seed is required");
  }
  c.name = doc.get_string("experiment.name", c.name);
  c.seed = doc.get_uint("experiment.seed", 0);
  c.rounds = doc.get_uint("experiment.rounds", c.rounds);
  c.warmup = doc.get_uint("experiment.warmup", c.warmup);
  c.network = doc.get_string("network.source", c.network);
  c.budget = doc.get_uint("network.budget", c.budget);
  c.distribution = read_distribution(doc, c.distribution);
  c.samples = doc.get_uint("estimator.samples", c.samples);
  c.estimator_seed = doc.get_uint("estimator.seed", c.seed);
  c.initial_delta = doc.get_double("delta.initial", c.initial_delta);
  c.delta_overrides = parse_label_map(doc, "delta.overrides");
  c.schedule = parse_enum(doc, "dynamics.schedule", c.schedule, parse_schedule_kind);
  c.epoch_length = doc.get_uint("dynamics.epoch_length", c.epoch_length);
  c.update_probability = doc.get_double("dynamics.probability", c.update_probability);
  c.knowledge = parse_enum(doc, "dynamics.knowledge", c.knowledge, parse_knowledge_mode);
  c.tie = parse_enum(doc, "dynamics.tie_rule", c.tie, parse_tie_rule);
  c.ranking = parse_enum(doc, "dynamics.ranking", c.ranking, parse_invite_ranking);
  c.personalized = doc.get_bool("dynamics.personalized", c.personalized);
  c.pinned = parse_label_map(doc, "dynamics.pinned");
  c.delta_max = doc.get_double("search.delta_max", c.delta_max);
  c.grid_points = doc.get_uint("search.grid_points", c.grid_points);
  c.exploration.kind =
      parse_enum(doc, "exploration.policy", c.exploration.kind, parse_bandit_kind);
  c.exploration.epsilon = doc.get_double("exploration.epsilon", c.exploration.epsilon);
  c.exploration.horizon = doc.get_uint("exploration.horizon", c.exploration.horizon);
  c.exploration.decay = doc.get_double("exploration.decay", c.exploration.decay);
  c.exploration.recency_window =
      doc.get_uint("exploration.recency_window", c.exploration.recency_window);
  c.exploration.width_floor = doc.get_double("exploration.width_floor", c.exploration.width_floor);
  doc.reject_unused();
  try {
    c.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(doc.source() + ": " + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return from_document(KeyValueDocument::load(path), path.parent_path());
}

std::string ExperimentConfig::to_text() const {
  std::string out;
  append(out, "experiment.name", name);
  append(out, "experiment.seed", std::to_string(seed));
  append(out, "experiment.rounds", std::to_string(rounds));
  append(out, "experiment.warmup", std::to_string(warmup));
  std::string source = network;
  if (source.starts_with("file:")) {
    std::filesystem::path p = source.substr(5);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    source = "file:" + std::filesystem::absolute(p).lexically_normal().string();
  }
  append(out, "network.source", source);
  append(out, "network.budget", std::to_string(budget));
  append(out, "distribution.law",
         distribution.law == EntryLaw::exponential ? "exponential" : "uniform");
  append(out, "distribution.mean", format_double(distribution.mean));
  append(out, "distribution.lo", format_double(distribution.lo));
  append(out, "distribution.hi", format_double(distribution.hi));
  append(out, "distribution.rows", std::to_string(distribution.rows));
  append(out, "distribution.cols", std::to_string(distribution.cols));
  append(out, "estimator.samples", std::to_string(samples));
  append(out, "estimator.seed", std::to_string(estimator_seed));
  append(out, "delta.initial", format_double(initial_delta));
  append(out, "delta.overrides", format_label_map(delta_overrides));
  append(out, "dynamics.schedule", to_string(schedule));
  append(out, "dynamics.epoch_length", std::to_string(epoch_length));
  append(out, "dynamics.probability", format_double(update_probability));
  append(out, "dynamics.knowledge", to_string(knowledge));
  append(out, "dynamics.tie_rule", to_string(tie));
  append(out, "dynamics.ranking", to_string(ranking));
  append(out, "dynamics.personalized", personalized ? "true" : "false");
  append(out, "dynamics.pinned", format_label_map(pinned));
  append(out, "search.delta_max", format_double(delta_max));
  append(out, "search.grid_points", std::to_string(grid_points));
  append(out, "exploration.policy", to_string(exploration.kind));
  append(out, "exploration.epsilon", format_double(exploration.epsilon));
  append(out, "exploration.horizon", std::to_string(exploration.horizon));
  append(out, "exploration.decay", format_double(exploration.decay));
  append(out, "exploration.recency_window", std::to_string(exploration.recency_window));
  append(out, "exploration.width_floor", format_double(exploration.width_floor));
  return out;
}

void ExperimentConfig::validate() const {
  if (rounds == 0) throw std::invalid_argument("experiment.rounds must be positive");
  if (warmup >= rounds) throw std::invalid_argument("experiment.warmup must be below rounds");
  if (samples == 0) throw std::invalid_argument("estimator.samples must be positive");
  if (!network.starts_with("builtin:") && !network.starts_with("file:")) {
    throw std::invalid_argument("network.source must start with builtin: or file:");
  }
  distribution.validate();
  DeltaSearchConfig{delta_max, grid_points, samples}.validate();
  exploration.validate();
  UpdateSchedule{schedule, epoch_length, update_probability}.validate();
  auto in_range = [&](double d) { return d >= 0.0 && d <= delta_max; };
  if (!in_range(initial_delta)) throw std::invalid_argument("delta.initial outside [0, delta_max]");
  for (const auto& [label, d] : delta_overrides) {
    if (!in_range(d)) throw std::invalid_argument("delta.overrides outside [0, delta_max]");
  }
  for (const auto& [label, d] : pinned) {
    if (!in_range(d)) throw std::invalid_argument("dynamics.pinned outside [0, delta_max]");
  }
  if (personalized && knowledge != KnowledgeMode::known) {
    throw std::invalid_argument("dynamics.personalized requires known trust levels");
  }
}

SocialNetwork ExperimentConfig::load_network() const {
  if (network.starts_with("builtin:")) return builtin_network(network.substr(8));
  std::filesystem::path p = network.substr(5);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return load_edge_list(p).network;
}

DynamicsConfig ExperimentConfig::dynamics(const SocialNetwork& net, std::size_t workers) const {
  DynamicsConfig d;
  d.schedule = {schedule, epoch_length, update_probability};
  d.knowledge = knowledge;
  d.round = {tie, ranking};
  d.search = {delta_max, grid_points, samples};
  d.exploration = exploration;
  d.personalized = personalized;
  d.budget = budget;
  d.rounds = rounds;
  d.seed = seed;
  d.workers = workers;
  auto index = [&](long long label, const char* what) {
    const std::size_t i = net.index_of(label);
    if (i == net.size()) {
      throw std::invalid_argument(std::string(what) + " names unknown agent " +
                                  std::to_string(label));
    }
    return i;
  };
  d.initial_delta.assign(net.size(), initial_delta);
  for (const auto& [label, value] : delta_overrides) {
    d.initial_delta[index(label, "delta.overrides")] = value;
  }
  for (const auto& [label, value] : pinned) d.seeds.pinned[index(label, "dynamics.pinned")] = value;
  return d;
}

std::vector<std::string> preset_names() {
  return {"table1",          "table3",           "zkc_zero",
          "zkc_known_random", "zkc_known_lex",   "zkc_seeded_lex",
          "zkc_epoch_learned", "zkc_prob_learned", "star_wide",
          "star_narrow",      "diad"};
}

std::vector<ExperimentConfig> preset(const std::string& name, std::uint64_t seed) {
  ExperimentConfig base;
  base.seed = seed;
  base.estimator_seed = seed;

  if (name == "table1" || name == "table3") {
    base.network = "builtin:example7";
    base.distribution = GameDistribution::exponential(2.0);
    base.rounds = 1000;
    base.schedule = ScheduleKind::fixed;
    std::vector<ExperimentConfig> out;
    if (name == "table1") {
      ExperimentConfig zero = base;
      zero.name = "table1_all_zero";
      ExperimentConfig seven = base;
      seven.name = "table1_seven_trusting";
      seven.delta_overrides[7] = 0.01;
      ExperimentConfig two = base;
      two.name = "table1_all_two";
      two.initial_delta = 2.0;
      out = {zero, seven, two};
    } else {
      ExperimentConfig up = base;
      up.name = "table3_ascending";
      up.ranking = InviteRanking::estimate;
      up.samples = 100000;
      ExperimentConfig down = up;
      down.name = "table3_descending";
      for (long long i = 1; i <= 7; ++i) {
        up.delta_overrides[i] = 2.0 * static_cast<double>(i - 1) / 3.0;
        down.delta_overrides[i] = 2.0 * static_cast<double>(7 - i) / 3.0;
      }
      out = {up, down};
    }
    return out;
  }

  if (name.starts_with("zkc_")) {
    base.name = name;
    base.network = "builtin:karate_club";
    base.distribution = GameDistribution::exponential(4.0);
    base.rounds = 1100;
    base.warmup = 100;
    base.schedule = ScheduleKind::synchronous;
    if (name == "zkc_zero") {
      base.schedule = ScheduleKind::fixed;
    } else if (name == "zkc_known_random") {
    } else if (name == "zkc_known_lex") {
      base.tie = TieRule::lexicographic;
    } else if (name == "zkc_seeded_lex") {
      base.tie = TieRule::lexicographic;
      for (long long i = 30; i <= 34; ++i) base.pinned[i] = base.delta_max;
    } else if (name == "zkc_epoch_learned") {
      base.knowledge = KnowledgeMode::learned;
      base.schedule = ScheduleKind::epoch;
      base.rounds = 5000;
    } else if (name == "zkc_prob_learned") {
      base.knowledge = KnowledgeMode::learned;
      base.schedule = ScheduleKind::probabilistic;
      base.rounds = 5000;
    } else {
      throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return {base};
  }

  if (name == "star_wide" || name == "star_narrow" || name == "diad") {
    base.name = name;
    base.network = name == "diad" ? "builtin:diad" : "builtin:star:5";
    base.budget = name == "star_narrow" ? 4 : 5;
    base.distribution = GameDistribution::exponential(4.0);
    base.schedule = ScheduleKind::synchronous;
    base.rounds = 50;
    return {base};
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

ExperimentSummary summarize(const std::vector<std::vector<AgentRound>>& rounds,
                            const SocialNetwork& network, std::uint64_t warmup,
                            double delta_max) {
  ExperimentSummary s;
  const std::size_t n = network.size();
  s.rounds = rounds.size();
  s.warmup = std::min<std::uint64_t>(warmup, rounds.size());
  s.agents = n;
  s.per_agent.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.per_agent[i].label = network.label(i);
    s.per_agent[i].degree = network.degree(i);
  }
  const std::size_t measured = rounds.size() - static_cast<std::size_t>(s.warmup);
  if (measured == 0 || n == 0) return s;
  double total_u = 0.0, total_delta = 0.0, at_max = 0.0;
  for (std::size_t t = static_cast<std::size_t>(s.warmup); t < rounds.size(); ++t) {
    if (rounds[t].size() != n) throw std::invalid_argument("round has the wrong agent count");
    for (std::size_t i = 0; i < n; ++i) {
      const AgentRound& a = rounds[t][i];
      AgentSummary& p = s.per_agent[i];
      p.mean_delta += a.delta;
      p.mean_v += a.v;
      p.mean_w += a.w;
      p.mean_utility += a.utility();
      p.fraction_at_delta_max += a.delta == delta_max ? 1.0 : 0.0;
      p.games_led += a.games_led;
      p.games_followed += a.games_followed;
    }
  }
  const double m = static_cast<double>(measured);
  for (auto& p : s.per_agent) {
    total_u += p.mean_utility;
    total_delta += p.mean_delta;
    at_max += p.fraction_at_delta_max;
    p.mean_delta /= m;
    p.mean_v /= m;
    p.mean_w /= m;
    p.mean_utility /= m;
    p.fraction_at_delta_max /= m;
    p.games_led /= m;
    p.games_followed /= m;
  }
  const double cells = m * static_cast<double>(n);
  s.avg_utility = total_u / cells;
  s.mean_delta = total_delta / cells;
  s.fraction_at_delta_max = at_max / cells;
  double last = 0.0;
  for (const auto& a : rounds.back()) last += a.delta;
  s.final_mean_delta = last / static_cast<double>(n);
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  result.network = config.load_network();
  const DynamicsConfig dyn = config.dynamics(result.network, workers);
  const UtilityEstimator estimator(config.distribution, config.samples, config.estimator_seed);
  auto& pairs = result.pair_games;
  const std::uint64_t warmup = config.warmup;
  DynamicsResult d = run_dynamics(
      result.network, estimator, dyn,
      [&pairs, warmup](std::uint64_t t, const RoundRecord& record, const std::vector<AgentRound>&) {
        if (t <= warmup) return;
        for (const PlayedGame& g : record.games) {
          ++pairs[{g.invitation.leader, g.invitation.follower}];
        }
      });
  result.rounds = std::move(d.rounds);
  result.summary = summarize(result.rounds, result.network, config.warmup, config.delta_max);
  return result;
}

std::string summary_csv(const ExperimentSummary& s) {
  std::string out = std::string(csv_header::summary) + '\n';
  auto row = [&](const std::string& k, const std::string& v) { out += k + ',' + v + '\n'; };
  row("schema_version", std::to_string(kSchemaVersion));
  row("rounds", std::to_string(s.rounds));
  row("warmup", std::to_string(s.warmup));
  row("agents", std::to_string(s.agents));
  row("avg_utility_per_agent_round", format_double(s.avg_utility));
  row("mean_delta", format_double(s.mean_delta));
  row("final_mean_delta", format_double(s.final_mean_delta));
  row("fraction_at_delta_max", format_double(s.fraction_at_delta_max));
  return out;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& text) {
  const std::filesystem::path tmp = path.string() + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

void write_bundle(const ExperimentResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path staging = dir.string() + ".partial";
  fs::remove_all(staging);
  try {
    fs::create_directories(staging);
    auto write = [&](const char* file, const std::string& text) {
      std::ofstream out(staging / file, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write '" + (staging / file).string() + "'");
      out << text;
      if (!out.flush()) throw std::runtime_error("write failed for '" + (staging / file).string() + "'");
    };
    const SocialNetwork& net = result.network;
    const std::size_t n = net.size();

    std::string rounds = std::string(csv_header::rounds) + '\n';
    for (std::size_t t = 0; t < result.rounds.size(); ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        const AgentRound& a = result.rounds[t][i];
        rounds += std::to_string(t + 1) + ',' + std::to_string(net.label(i)) + ',' +
                  format_double(a.delta) + ',' + format_double(a.v) + ',' + format_double(a.w) +
                  ',' + format_double(a.utility()) + ',' + std::to_string(a.games_led) + ',' +
                  std::to_string(a.games_followed) + '\n';
      }
    }
    write("rounds.csv", rounds);

    std::set<std::size_t> degrees;
    for (std::size_t i = 0; i < n; ++i) degrees.insert(net.degree(i));
    std::string by_degree = std::string(csv_header::degree_delta) + '\n';
    for (std::size_t t = 0; t < result.rounds.size(); ++t) {
      for (std::size_t deg : degrees) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (net.degree(i) != deg) continue;
          sum += result.rounds[t][i].delta;
          ++count;
        }
        by_degree += std::to_string(t + 1) + ',' + std::to_string(deg) + ',' +
                     std::to_string(count) + ',' + format_double(sum / static_cast<double>(count)) +
                     '\n';
      }
    }
    write("degree_delta.csv", by_degree);

    std::string agents = std::string(csv_header::agents) + '\n';
    for (const AgentSummary& a : result.summary.per_agent) {
      agents += std::to_string(a.label) + ',' + std::to_string(a.degree) + ',' +
                format_double(a.mean_delta) + ',' + format_double(a.mean_v) + ',' +
                format_double(a.mean_w) + ',' + format_double(a.mean_utility) + ',' +
                format_double(a.fraction_at_delta_max) + ',' + format_double(a.games_led) + ',' +
                format_double(a.games_followed) + '\n';
    }
    write("agents.csv", agents);

    std::string pairs = std::string(csv_header::pairs) + '\n';
    for (const auto& [pair, games] : result.pair_games) {
      pairs += std::to_string(net.label(pair.first)) + ',' + std::to_string(net.label(pair.second)) +
               ',' + std::to_string(games) + '\n';
    }
    write("pairs.csv", pairs);
    write("summary.csv", summary_csv(result.summary));
    write("config.resolved", result.config.to_text());

    fs::remove_all(dir);
    fs::rename(staging, dir);
  } catch (...) {
    std::error_code ignored;
    fs::remove_all(staging, ignored);
    throw;
  }
}

ExperimentSummary summarize_bundle(const std::filesystem::path& dir) {
  const ExperimentConfig config = ExperimentConfig::load(dir / "config.resolved");
  const SocialNetwork net = config.load_network();
  std::ifstream in(dir / "rounds.csv");
  if (!in) throw std::runtime_error("cannot open '" + (dir / "rounds.csv").string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != csv_header::rounds) {
    throw std::runtime_error("rounds.csv has an unexpected header");
  }
  std::vector<std::vector<AgentRound>> rounds;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = split_csv_line(line);
    try {
      if (f.size() != 8) throw std::invalid_argument("expected 8 fields");
      const std::uint64_t t = parse_uint(f[0]);
      const std::size_t i = net.index_of(std::stoll(f[1]));
      if (t == 0 || i == net.size()) throw std::invalid_argument("unknown round or agent");
      if (rounds.size() < t) rounds.resize(t, std::vector<AgentRound>(net.size()));
      AgentRound& a = rounds[t - 1][i];
      a.delta = parse_double(f[2]);
      a.v = parse_double(f[3]);
      a.w = parse_double(f[4]);
      a.games_led = static_cast<std::uint32_t>(parse_uint(f[6]));
      a.games_followed = static_cast<std::uint32_t>(parse_uint(f[7]));
    } catch (const std::exception& e) {
      throw std::runtime_error("rounds.csv:" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return summarize(rounds, net, config.warmup, config.delta_max);
}

std::vector<GridEvaluation> sweep_delta(const ExperimentConfig& config, long long agent_label,
                                        std::uint64_t sweep_seed) {
  config.validate();
  const SocialNetwork net = config.load_network();
  const std::size_t self = net.index_of(agent_label);
  if (self == net.size()) {
    throw std::invalid_argument("unknown agent " + std::to_string(agent_label));
  }
  const UtilityEstimator estimator(config.distribution, config.samples, config.estimator_seed);
  const DeltaSearchConfig search{config.delta_max, config.grid_points, config.samples};
  const auto grid = search.grid();
  std::vector<AgentState> agents = make_agents(net, config.budget);
  Rng rng(derive_seed(sweep_seed, {kSweepStream}));
  for (auto& a : agents) a.delta = grid[static_cast<std::size_t>(rng.below(grid.size()))];
  const NeighborhoodView view = known_view(net, agents, self);
  return evaluate_delta_grid(view, grid, estimator, {config.tie, config.ranking});
}

std::string sweep_csv(const std::vector<GridEvaluation>& rows) {
  std::string out = std::string(csv_header::sweep) + '\n';
  for (const auto& r : rows) {
    out += format_double(r.delta) + ',' + format_double(r.v) + ',' + format_double(r.w) + ',' +
           format_double(r.utility()) + ',' + format_double(r.games_led) + ',' +
           format_double(r.games_followed) + '\n';
  }
  return out;
}

RateStudyConfig RateStudyConfig::from_document(const KeyValueDocument& doc) {
  RateStudyConfig c;
  if (!doc.has("experiment.seed")) {
    throw ConfigError(doc.source() + ": experiment.seed is required");
  }
  c.seed = doc.get_uint("experiment.seed", 0);
  c.distribution = read_distribution(doc, c.distribution);
  c.columns = doc.get_doubles("rates.n", c.columns);
  c.delta2 = doc.get_doubles("rates.delta2", c.delta2);
  c.epsilon = doc.get_doubles("rates.epsilon", c.epsilon);
  c.probability_trials = doc.get_uint("rates.probability_trials", c.probability_trials);
  c.time_trials = doc.get_uint("rates.time_trials", c.time_trials);
  c.rows = doc.get_uint("rates.rows", c.rows);
  c.policy = parse_enum(doc, "rates.policy", c.policy, parse_row_policy);
  c.delta_max = doc.get_double("search.delta_max", c.delta_max);
  c.max_rounds = doc.get_uint("rates.max_rounds", c.max_rounds);
  doc.reject_unused();
  for (double n : c.columns) {
    if (!(n >= 1.0) || n != std::floor(n)) {
      throw ConfigError(doc.source() + ": rates.n must list positive integers");
    }
  }
  if (c.rows == 0) throw ConfigError(doc.source() + ": rates.rows must be positive");
  return c;
}

bool RateRow::within_bound() const {
  if (!bound.bounded) return true;
  return time.mean <= bound.t_bound + 3.0 * std::sqrt(bound.se * bound.se + time.se * time.se);
}

std::vector<RateRow> run_rate_study(const RateStudyConfig& config, std::size_t workers) {
  std::vector<RateRow> rows;
  for (double n : config.columns) {
    for (double d : config.delta2) {
      for (double e : config.epsilon) {
        RateRow r;
        r.n = static_cast<std::size_t>(n);
        r.delta2 = d;
        r.epsilon = e;
        rows.push_back(r);
      }
    }
  }
  parallel_for(rows.size(), workers, [&](std::size_t k) {
    RateRow& r = rows[k];
    GameDistribution single = config.distribution;
    single.rows = 1;
    single.cols = r.n;
    GameDistribution played = single;
    played.rows = config.rows;
    const std::uint64_t cell_seed = derive_seed(config.seed, {kRateStream, k});
    r.probabilities = estimate_discovery_probabilities(single, TrustLevel(r.delta2), r.epsilon,
                                                       config.probability_trials, cell_seed);
    r.bound = discovery_time_bound(r.probabilities);
    r.time = measure_discovery_time(played, TrustLevel(r.delta2), r.epsilon, config.policy,
                                    config.time_trials, cell_seed + 1, config.delta_max,
                                    config.max_rounds);
  });
  return rows;
}

std::string rates_csv(const std::vector<RateRow>& rows) {
  std::string out = std::string(csv_header::rates) + '\n';
  for (const RateRow& r : rows) {
    out += std::to_string(r.n) + ',' + format_double(r.delta2) + ',' + format_double(r.epsilon) +
           ',' + format_double(r.probabilities.p_lower) + ',' +
           format_double(r.probabilities.p_upper) + ',' + format_double(r.probabilities.p_both) +
           ',' + format_double(r.bound.t_bound) + ',' + format_double(r.bound.se) + ',' +
           format_double(r.time.mean) + ',' + format_double(r.time.se) + ',' +
           std::to_string(r.time.censored) + ',' + std::to_string(r.time.trials) + '\n';
  }
  return out;
}

}  // namespace trustnet
