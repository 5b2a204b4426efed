#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>

#include "trustnet/config.hpp"
#include "trustnet/experiment.hpp"
#include "trustnet/network.hpp"
#include "trustnet/parallel.hpp"

namespace fs = std::filesystem;
using namespace trustnet;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kConfig = 3, kIo = 4 };

int report(const std::string& command, const std::string& kind, const std::string& message,
           int code) {
  nlohmann::json j;
  j["status"] = "error";
  j["command"] = command;
  j["kind"] = kind;
  j["message"] = message;
  j["exit_code"] = code;
  std::cerr << j.dump() << '\n';
  return code;
}

void print_summary(const std::string& name, const ExperimentSummary& s) {
  std::cout << name << ": avg_utility=" << format_double(s.avg_utility)
            << " mean_delta=" << format_double(s.mean_delta)
            << " final_mean_delta=" << format_double(s.final_mean_delta) << '\n';
}

fs::path default_out(const ExperimentConfig& c) { return fs::path("trustnet-out") / c.name; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-aware Stackelberg games on social networks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string preset_name;
  std::uint64_t seed = 0;
  bool list = false;
  long long agent = 0;
  std::uint64_t sweep_seed = 0;
  std::string bundle;

  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory");

  auto* pre = app.add_subcommand("preset", "Run a built-in experiment preset");
  pre->add_option("name", preset_name, "Preset name");
  pre->add_option("--seed", seed, "Random seed");
  pre->add_option("--out", out_dir, "Output directory");
  pre->add_flag("--list", list, "List preset names");

  auto* sweep = app.add_subcommand("sweep-delta", "Utility of one agent over the trust grid");
  sweep->add_option("config", config_path, "Config file")->required();
  sweep->add_option("--agent", agent, "Agent label")->required();
  sweep->add_option("--sweep-seed", sweep_seed, "Seed for the other agents' trust levels");
  sweep->add_option("--out", out_dir, "Output CSV file (default stdout)");

  auto* rates = app.add_subcommand("rates", "Discovery-time study");
  rates->add_option("config", config_path, "Config file")->required();
  rates->add_option("--out", out_dir, "Output CSV file (default stdout)");

  auto* summ = app.add_subcommand("summarize", "Recompute summary metrics from a bundle");
  summ->add_option("dir", bundle, "Bundle directory")->required();

  std::string command = "trustnet";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(command, "usage", e.what(), kUsage);
  }

  try {
    const std::size_t workers = workers_from_environment();
    if (run->parsed()) {
      command = "run";
      const ExperimentConfig config = ExperimentConfig::load(config_path);
      const ExperimentResult result = run_experiment(config, workers);
      const fs::path dir = out_dir.empty() ? default_out(config) : fs::path(out_dir);
      write_bundle(result, dir);
      print_summary(config.name, result.summary);
    } else if (pre->parsed()) {
      command = "preset";
      if (list) {
        for (const auto& n : preset_names()) std::cout << n << '\n';
        return kOk;
      }
      if (preset_name.empty()) return report(command, "usage", "preset name required", kUsage);
      if (pre->count("--seed") == 0) return report(command, "usage", "--seed is required", kUsage);
      const fs::path root = out_dir.empty() ? fs::path("trustnet-out") : fs::path(out_dir);
      for (const ExperimentConfig& config : preset(preset_name, seed)) {
        const ExperimentResult result = run_experiment(config, workers);
        write_bundle(result, root / config.name);
        print_summary(config.name, result.summary);
      }
    } else if (sweep->parsed()) {
      command = "sweep-delta";
      const ExperimentConfig config = ExperimentConfig::load(config_path);
      const std::string csv = sweep_csv(sweep_delta(config, agent, sweep_seed));
      if (out_dir.empty()) {
        std::cout << csv;
      } else {
        write_file_atomically(out_dir, csv);
      }
    } else if (rates->parsed()) {
      command = "rates";
      const RateStudyConfig config =
          RateStudyConfig::from_document(KeyValueDocument::load(config_path));
      const std::string csv = rates_csv(run_rate_study(config, workers));
      if (out_dir.empty()) {
        std::cout << csv;
      } else {
        write_file_atomically(out_dir, csv);
      }
    } else if (summ->parsed()) {
      command = "summarize";
      std::cout << summary_csv(summarize_bundle(bundle));
    }
  } catch (const ConfigError& e) {
    return report(command, "config", e.what(), kConfig);
  } catch (const fs::filesystem_error& e) {
    return report(command, "io", e.what(), kIo);
  } catch (const std::invalid_argument& e) {
    return report(command, "invalid_argument", e.what(), kConfig);
  } catch (const std::exception& e) {
    return report(command, "runtime", e.what(), kFailure);
  }
  return kOk;
}
