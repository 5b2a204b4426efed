// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion. The exit
// status is nonzero when a check fails that is not listed in kKnownGaps.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "trustnet/experiment.hpp"
#include "trustnet/parallel.hpp"

using namespace trustnet;

namespace {

const std::set<std::string> kKnownGaps = {"4a", "5c"};

struct Check {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct Outcome {
  std::vector<Check> checks;
  std::string skip;
};

std::string fmt(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

bool within(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

Check near(const std::string& id, const std::string& what, double value, double target,
           double rel) {
  return {id, within(value, target, rel),
          what + " " + fmt(value) + " vs " + fmt(target) + " +-" + fmt(rel * 100, 0) + "%"};
}

std::size_t workers() { return workers_from_environment(); }

double round_mean_delta(const std::vector<AgentRound>& round) {
  double s = 0.0;
  for (const auto& a : round) s += a.delta;
  return round.empty() ? 0.0 : s / static_cast<double>(round.size());
}

const double kDeltaGrid[] = {0.0, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 1e9};

// Example network at fixed trust, exponential mean 2, k = 2, averaged over seeds.
Outcome fixed_trust_example() {
  const int seeds = 5;
  double zero = 0.0, two = 0.0, seven = 0.0, selfish7 = 0.0;
  for (int s = 1; s <= seeds; ++s) {
    const auto runs = preset("table1", static_cast<std::uint64_t>(s));
    const auto r0 = run_experiment(runs[0], workers());
    const auto r7 = run_experiment(runs[1], workers());
    const auto r2 = run_experiment(runs[2], workers());
    zero += r0.summary.avg_utility / seeds;
    selfish7 += r0.summary.per_agent[6].mean_utility / seeds;
    seven += r7.summary.per_agent[6].mean_utility / seeds;
    two += r2.summary.avg_utility / seeds;
  }
  Outcome o;
  o.checks.push_back(near("1a", "all-zero avg", zero, 12.012, 0.03));
  o.checks.push_back(near("1b", "all-two avg", two, 13.749, 0.03));
  o.checks.push_back(near("1c", "agent 7 trusting", seven, 18.025, 0.05));
  o.checks.push_back({"1d", seven >= 1.2 * selfish7,
                      "agent 7 gain " + fmt(seven / selfish7) + "x over selfish " + fmt(selfish7)});
  return o;
}

// Example network with graded trust: invitation sets from a 1e5-sample estimator and per-agent utilities.
Outcome graded_trust_example() {
  using Sets = std::vector<std::vector<long long>>;
  const Sets up_invites = {{5, 7}, {4, 5}, {5, 7}, {6, 7}, {3, 4}, {4, 7}, {4, 6}};
  const Sets up_invited = {{}, {}, {5}, {2, 5, 6, 7}, {1, 2, 3}, {4, 7}, {1, 3, 4, 6}};
  const Sets down_invites = {{2, 5}, {1, 3}, {2, 5}, {2, 5}, {1, 2}, {4, 7}, {1, 3}};
  const Sets down_invited = {{2, 5, 7}, {1, 3, 4, 5}, {2, 7}, {6}, {1, 3, 4}, {}, {6}};
  const std::vector<double> up_utility = {7.750, 7.360, 11.040, 21.064, 15.193, 13.754, 18.931};
  const std::vector<double> down_utility = {15.559, 20.446, 12.859, 9.960,
                                            18.059, 6.607,  11.244};
  const int seeds = 5;
  const auto configs = preset("table3", 1);

  Outcome o;
  for (int which = 0; which < 2; ++which) {
    const ExperimentConfig& cfg = configs[which];
    const Sets& want_invites = which == 0 ? up_invites : down_invites;
    const Sets& want_invited = which == 0 ? up_invited : down_invited;
    const auto& want_utility = which == 0 ? up_utility : down_utility;
    const std::string tag = which == 0 ? "ascending" : "descending";

    const SocialNetwork net = cfg.load_network();
    const DynamicsConfig dyn = cfg.dynamics(net, 1);
    auto agents = make_agents(net, cfg.budget);
    for (std::size_t i = 0; i < agents.size(); ++i) agents[i].delta = dyn.initial_delta[i];
    const UtilityEstimator est(cfg.distribution, cfg.samples, cfg.estimator_seed);
    const auto plan = plan_known_invitations(net, agents, est, dyn.round, 1, cfg.seed);
    Sets invites(net.size()), invited(net.size());
    for (const auto& inv : plan) {
      invites[inv.leader].push_back(net.label(inv.follower));
      invited[inv.follower].push_back(net.label(inv.leader));
    }
    bool sets_ok = true;
    std::string mismatch;
    for (std::size_t i = 0; i < net.size(); ++i) {
      auto a = invites[i], b = invited[i], wa = want_invites[i], wb = want_invited[i];
      for (auto* v : {&a, &b, &wa, &wb}) std::sort(v->begin(), v->end());
      if (a != wa || b != wb) {
        sets_ok = false;
        mismatch += " agent " + std::to_string(i + 1);
      }
    }
    o.checks.push_back({"2a", sets_ok, tag + " sets" + (sets_ok ? " match" : " differ:" + mismatch)});

    std::vector<double> utility(net.size(), 0.0);
    double avg = 0.0;
    for (int s = 1; s <= seeds; ++s) {
      ExperimentConfig run = preset("table3", static_cast<std::uint64_t>(s))[which];
      const auto r = run_experiment(run, workers());
      for (std::size_t i = 0; i < net.size(); ++i) {
        utility[i] += r.summary.per_agent[i].mean_utility / seeds;
      }
      avg += r.summary.avg_utility / seeds;
    }
    bool agents_ok = true;
    std::string worst;
    double worst_err = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) {
      const double err = std::abs(utility[i] - want_utility[i]) / want_utility[i];
      if (err > worst_err) {
        worst_err = err;
        worst = "agent " + std::to_string(i + 1) + " " + fmt(utility[i]) + " vs " +
                fmt(want_utility[i]);
      }
      agents_ok = agents_ok && err <= 0.05;
    }
    o.checks.push_back({"2b", agents_ok, tag + " worst " + worst});
    o.checks.push_back(near("2c", tag + " avg", avg, which == 0 ? 13.591 : 13.559, 0.03));
  }
  return o;
}

// Expected following count of agent 7 and its empirical frequency.
Outcome following_count() {
  const auto net = example7_network();
  const auto agents = make_agents(net, 2);
  std::vector<std::size_t> budgets;
  for (const auto& a : agents) budgets.push_back(a.budget);
  const double value = expected_following_count(net, 6, budgets);
  const auto exact = oracle::following_count(net, 6, budgets);
  Outcome o;
  o.checks.push_back({"3a", exact.num == 17 && exact.den == 6 && std::abs(value - 17.0 / 6.0) < 1e-12,
                      "expected " + fmt(value, 12) + ", enumerated " + std::to_string(exact.num) +
                          "/" + std::to_string(exact.den)});
  const UtilityEstimator est(GameDistribution::exponential(2.0), 100, 1);
  const int rounds = 10000;
  double followed = 0.0;
  for (int t = 1; t <= rounds; ++t) {
    for (const auto& inv : plan_known_invitations(net, agents, est, {}, t, 17)) {
      followed += inv.follower == 6 ? 1.0 : 0.0;
    }
  }
  o.checks.push_back(near("3b", "empirical", followed / rounds, 17.0 / 6.0, 0.02));
  return o;
}

struct ZkcRuns {
  ExperimentResult zero, random, lex, seeded, epoch, prob;
};

const ZkcRuns& zkc_runs() {
  static const ZkcRuns runs = [] {
    const std::uint64_t seed = 1;
    auto run = [&](const char* name) { return run_experiment(preset(name, seed)[0], workers()); };
    return ZkcRuns{run("zkc_zero"),      run("zkc_known_random"),  run("zkc_known_lex"),
                   run("zkc_seeded_lex"), run("zkc_epoch_learned"), run("zkc_prob_learned")};
  }();
  return runs;
}

Outcome zkc_baselines() {
  const auto& r = zkc_runs();
  Outcome o;
  o.checks.push_back(near("4a", "fixed zero", r.zero.summary.avg_utility, 22.792, 0.03));
  o.checks.push_back(near("4b", "known", r.random.summary.avg_utility, 27.578, 0.04));
  o.checks.push_back(near("4c", "epoch learned", r.epoch.summary.avg_utility, 27.540, 0.04));
  o.checks.push_back(near("4d", "probabilistic learned", r.prob.summary.avg_utility, 27.747, 0.04));
  return o;
}

Outcome zkc_phenomenology() {
  const auto& r = zkc_runs();
  Outcome o;

  const auto& s = r.random.summary;
  std::size_t high = 0;
  for (const auto& a : s.per_agent) high += a.fraction_at_delta_max >= 0.8 ? 1 : 0;
  const double share = static_cast<double>(high) / static_cast<double>(s.agents);
  o.checks.push_back({"5a", share >= 0.6, "agents at max trust in >=80% of rounds " + fmt(share)});

  int cycles = 0;
  bool risen = false;
  const std::size_t horizon = std::min<std::size_t>(500, r.lex.rounds.size());
  for (std::size_t t = 0; t < horizon; ++t) {
    const double m = round_mean_delta(r.lex.rounds[t]);
    if (!risen && m > 25.0) risen = true;
    if (risen && m < 5.0) {
      ++cycles;
      risen = false;
    }
  }
  o.checks.push_back({"5b", cycles >= 2, "rise-collapse cycles in 500 rounds " +
                                             std::to_string(cycles)});

  double floor = 1e300;
  for (std::size_t t = r.seeded.config.warmup; t < r.seeded.rounds.size(); ++t) {
    floor = std::min(floor, round_mean_delta(r.seeded.rounds[t]));
  }
  const double gap = r.seeded.summary.avg_utility - r.lex.summary.avg_utility;
  const bool gap_ok = gap > 0.0 && within(gap, 0.349, 0.5);
  o.checks.push_back({"5c", floor >= 10.0 && gap_ok,
                      "seeded min mean trust " + fmt(floor) + ", utility " +
                          fmt(r.lex.summary.avg_utility) + " -> " +
                          fmt(r.seeded.summary.avg_utility) + " (gap " + fmt(gap) +
                          " vs 0.349 +-50%)"});
  return o;
}

// Star and diad from random starting trust, two synchronous rounds.
Outcome degenerate() {
  Outcome o;
  struct Case {
    std::string network;
    std::size_t budget;
  };
  const std::vector<Case> cases = {{"star:5", 5}, {"star:5", 8}, {"star:8", 8}, {"diad", 1},
                                   {"diad", 3}};
  const UtilityEstimator est(GameDistribution::exponential(4.0), 1000, 1);
  bool ok = true;
  std::string failed;
  for (const auto& c : cases) {
    const auto net = builtin_network(c.network);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      DynamicsConfig cfg;
      cfg.budget = c.budget;
      cfg.rounds = 2;
      cfg.seed = seed;
      Rng rng(seed);
      for (std::size_t i = 0; i < net.size(); ++i) {
        cfg.initial_delta.push_back(rng.uniform(0.0, 30.0));
      }
      const auto out = run_dynamics(net, est, cfg);
      for (const auto& a : out.final_agents) {
        if (a.delta != 0.0) {
          ok = false;
          failed = c.network + " k=" + std::to_string(c.budget);
        }
      }
    }
  }
  o.checks.push_back({"6", ok, ok ? "all 100 runs at zero after 2 rounds" : "nonzero in " + failed});
  return o;
}

// Interval learning on random sequences, from both sides of the game.
Outcome learning() {
  Rng rng(77);
  const int sequences = 100000;
  std::size_t lost = 0, widened = 0, missed_flags = 0, false_flags = 0, flags = 0;
  for (int seq = 0; seq < sequences; ++seq) {
    const bool follower_side = seq % 2 == 1;
    const bool inject = seq % 4 >= 2;
    double truth = rng.uniform(0.0, 6.0);
    BoundInterval iv;
    for (int step = 0; step < 16; ++step) {
      if (inject && step == 8) truth = rng.uniform(0.0, 6.0);
      const auto g = oracle::random_game(rng, 1 + rng.below(3), 1 + rng.below(4), step % 4 == 0);
      BoundUpdate up;
      std::pair<double, double> consistent;
      if (follower_side) {
        const double anticipated = rng.uniform(0.0, 6.0);
        const auto out =
            leader_ltse_strategy(g, TrustLevel(truth), TrustLevel(anticipated));
        up = follower_update_bounds(iv, leader_frontier(g, TrustLevel(anticipated)),
                                    out.leader_strategy);
        consistent = oracle::leader_interval(g, anticipated, out.leader_strategy);
      } else {
        const std::size_t row = rng.below(g.rows());
        const std::size_t col = follower_ltse_response(g, row, TrustLevel(truth));
        up = leader_update_bounds(iv, follower_frontier(g, row), col);
        consistent = oracle::follower_interval(g, row, col);
      }
      const bool inconsistent = consistent.second <= iv.lower || consistent.first >= iv.upper;
      if (!inject && !up.interval.contains(truth)) ++lost;
      if (up.changed) ++flags;
      if (inconsistent && !up.changed) ++missed_flags;
      if (!inconsistent && up.changed) ++false_flags;
      if (!up.changed && up.interval.width(30) > iv.width(30)) ++widened;
      iv = up.interval;
    }
  }
  Outcome o;
  o.checks.push_back({"7a", lost == 0, "true trust outside interval " + std::to_string(lost)});
  o.checks.push_back({"7b", widened == 0, "widened without flag " + std::to_string(widened)});
  o.checks.push_back({"7c", missed_flags == 0 && false_flags == 0 && flags > 0,
                      "flags " + std::to_string(flags) + ", missed " +
                          std::to_string(missed_flags) + ", spurious " +
                          std::to_string(false_flags)});
  return o;
}

// Solver against enumeration, Stackelberg reduction and monotone trust sweeps.
Outcome solver() {
  Rng rng(88);
  const int games = 10000;
  std::size_t disagree = 0, stackelberg = 0, monotone = 0;
  for (int i = 0; i < games; ++i) {
    const auto g = oracle::random_game(rng, 1 + rng.below(4), 1 + rng.below(4), i % 3 == 0);
    for (double dl : kDeltaGrid) {
      for (double df : kDeltaGrid) {
        const auto want = oracle::ltse(g, dl, df, df);
        const auto got = leader_ltse_strategy(g, TrustLevel(dl), TrustLevel(df));
        if (got.leader_strategy != want.row || got.follower_strategy != want.col) ++disagree;
      }
    }
    const auto s = oracle::stackelberg(g);
    const auto z = leader_ltse_strategy(g, TrustLevel(0.0), TrustLevel(0.0));
    if (z.leader_utility != g.leader(s.row, s.col) ||
        z.follower_utility != g.follower(s.row, s.col)) {
      ++stackelberg;
    }

    const TrustLevel df(kDeltaGrid[rng.below(std::size(kDeltaGrid))]);
    const std::size_t row = rng.below(g.rows());
    bool bad = false;
    LtseOutcome prev = leader_ltse_strategy(g, TrustLevel(0.0), df);
    double prev_net = -1e300;
    for (double d : kDeltaGrid) {
      const LtseOutcome cur = leader_ltse_strategy(g, TrustLevel(d), df);
      bad = bad || cur.follower_utility < prev.follower_utility ||
            cur.leader_utility > prev.leader_utility ||
            cur.leader_utility + cur.follower_utility <
                prev.leader_utility + prev.follower_utility;
      prev = cur;
      const double net = g.net(row, follower_ltse_response(g, row, TrustLevel(d)));
      bad = bad || net < prev_net;
      prev_net = net;
    }
    if (bad) ++monotone;
  }
  Outcome o;
  o.checks.push_back({"8a", disagree == 0, "enumeration mismatches " + std::to_string(disagree)});
  o.checks.push_back(
      {"8b", stackelberg == 0, "Stackelberg mismatches " + std::to_string(stackelberg)});
  o.checks.push_back({"8c", monotone == 0, "sweeps with violations " + std::to_string(monotone)});
  return o;
}

Outcome rates() {
  RateStudyConfig cfg;
  cfg.seed = 5;
  const auto rows = run_rate_study(cfg, workers());
  std::size_t outside = 0;
  std::string where;
  for (const auto& r : rows) {
    if (!r.within_bound()) {
      ++outside;
      where = " (n=" + std::to_string(r.n) + " delta2=" + fmt(r.delta2, 1) +
              " eps=" + fmt(r.epsilon, 1) + ")";
    }
  }
  Outcome o;
  o.checks.push_back({"9a", outside == 0 && !rows.empty(),
                      std::to_string(rows.size() - outside) + "/" + std::to_string(rows.size()) +
                          " cells within bound" + where});

  std::vector<double> p;
  for (std::size_t n : {10, 100, 1000}) {
    const auto probs = estimate_discovery_probabilities(GameDistribution::uniform(0.0, 1.0, 1, n),
                                                        TrustLevel(0.2), 0.05, 100000, 6);
    p.push_back(probs.p_any());
  }
  o.checks.push_back({"9b", p[0] > p[1] && p[1] > p[2],
                      "discovery probability n=10,100,1000: " + fmt(p[0], 4) + ", " +
                          fmt(p[1], 4) + ", " + fmt(p[2], 4)});
  return o;
}

Outcome facebook() {
  Outcome o;
  const char* path = std::getenv("TRUSTNET_FACEBOOK_EDGES");
  if (path == nullptr || *path == '\0') {
    o.skip = "TRUSTNET_FACEBOOK_EDGES not set";
    return o;
  }
  auto config = [&](const char* name) {
    ExperimentConfig c = preset(name, 1)[0];
    c.network = std::string("file:") + path;
    return c;
  };
  const auto zero = run_experiment(config("zkc_zero"), workers());
  const auto known = run_experiment(config("zkc_known_random"), workers());
  const auto epoch = run_experiment(config("zkc_epoch_learned"), workers());
  o.checks.push_back(near("10a", "fixed zero", zero.summary.avg_utility, 30.905, 0.03));
  o.checks.push_back(near("10b", "known", known.summary.avg_utility, 37.750, 0.04));
  o.checks.push_back(near("10c", "epoch learned", epoch.summary.avg_utility, 38.297, 0.04));
  const double m = known.summary.mean_delta;
  o.checks.push_back({"10d", std::abs(m - 25.0) <= 3.0, "long-run mean trust " + fmt(m)});
  return o;
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"1", "example network table, fixed trust", fixed_trust_example},
      {"2", "example network invitations and utilities", graded_trust_example},
      {"3", "expected following count", following_count},
      {"4", "karate club baselines", zkc_baselines},
      {"5", "karate club dynamics phenomenology", zkc_phenomenology},
      {"6", "degenerate networks", degenerate},
      {"7", "learning soundness", learning},
      {"8", "solver correctness", solver},
      {"9", "learning rates", rates},
      {"10", "ego-Facebook", facebook},
  };
  std::set<std::string> only(argv + 1, argv + argc);

  int unexpected = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.checks.push_back({c.id, false, std::string("error: ") + e.what()});
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    if (!out.skip.empty()) {
      line << "SKIP " << c.id << " " << c.title << ": " << out.skip;
      std::printf("%s\n", line.str().c_str());
      continue;
    }
    bool pass = true;
    std::vector<std::string> gaps;
    for (const auto& ch : out.checks) {
      if (ch.pass) continue;
      pass = false;
      if (kKnownGaps.count(ch.id)) {
        gaps.push_back(ch.id);
      } else {
        ++unexpected;
      }
    }
    line << (pass ? "PASS " : "FAIL ") << c.id << " " << c.title << ":";
    for (std::size_t i = 0; i < out.checks.size(); ++i) {
      const auto& ch = out.checks[i];
      line << (i ? ";" : "") << " [" << ch.id << (ch.pass ? " ok" : " fail") << "] " << ch.detail;
    }
    if (!gaps.empty()) {
      line << "; known gap:";
      for (const auto& g : gaps) line << " " << g;
    }
    line << " (" << fmt(secs, 1) << "s)";
    std::printf("%s\n", line.str().c_str());
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
