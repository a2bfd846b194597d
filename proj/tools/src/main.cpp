#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sbeam/config.hpp"
#include "sbeam/experiment.hpp"
#include "sbeam/verify.hpp"

namespace {

// Flag values are kept as text and applied through ExperimentConfig::set, so
// flags and config files share one parser. Flags override the config file.
struct ExperimentFlags {
  std::string config_path;
  std::map<std::string, std::string> values;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "flat key = value config file");
    const std::pair<const char*, const char*> keys[] = {
        {"--scenario", "scenario"}, {"--n", "n"},
        {"--k", "k"},               {"--b-count", "b_count"},
        {"--l-hashes", "l_hashes"}, {"--gamma", "gamma"},
        {"--snr-db", "snr_db"},     {"--ripple-db", "ripple_db"},
        {"--trials", "trials"},     {"--seed", "seed"},
        {"--schemes", "schemes"},   {"--fine-grid", "fine_grid_factor"},
        {"--paths", "paths"},       {"--on-grid", "on_grid"},
        {"--sizes", "sizes"},       {"--clients", "clients"},
        {"--timing", "timing"},     {"--threads", "threads"},
        {"--out", "out"},
    };
    for (auto [flag, key] : keys) app.add_option(flag, values[key], std::string("sets ") + key);
  }

  sbeam::ExperimentConfig build(const CLI::App& app, sbeam::ExperimentConfig cfg) const {
    if (!config_path.empty()) sbeam::load_config_file(config_path, cfg);
    for (const auto& [key, value] : values) {
      const std::string flag = "--" + replace_underscores(key == "fine_grid_factor" ? "fine_grid" : key);
      if (app.count(flag) > 0) cfg.set(key, value);
    }
    cfg.validate();
    return cfg;
  }

  static std::string replace_underscores(std::string s) {
    for (auto& c : s) {
      if (c == '_') c = '-';
    }
    return s;
  }
};

void emit(const sbeam::ExperimentConfig& cfg, const std::vector<sbeam::ExperimentRecord>& rows) {
  if (cfg.out.empty()) {
    sbeam::write_csv(std::cout, rows);
    sbeam::write_summary(std::cerr, cfg, rows);
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + cfg.out);
  sbeam::write_csv(file, rows);
  file.close();
  if (!file) throw std::runtime_error("failed writing " + cfg.out);
  sbeam::write_summary(std::cout, cfg, rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-hashing beam alignment simulator"};
  app.require_subcommand(1);

  ExperimentFlags run_flags, sweep_flags, latency_flags;
  auto* run = app.add_subcommand("run", "Monte Carlo alignment experiment; CSV plus summary");
  run_flags.attach(*run);
  auto* sweep = app.add_subcommand("sweep", "scaling scenario over --sizes");
  sweep_flags.attach(*sweep);
  auto* latency = app.add_subcommand("latency", "beacon-interval delay model table");
  latency_flags.attach(*latency);

  sbeam::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "property suite with pinned seeds");
  verify->add_option("--seed", verify_opts.seed, "master seed");
  verify->add_option("--trial-fraction", verify_opts.trial_fraction,
                     "fraction of the 10^4 Monte Carlo trials; tolerances widen as 2/sqrt(trials)")
      ->check(CLI::Range(1e-4, 1.0));
  verify->add_option("--threshold-scale", verify_opts.threshold_scale,
                     "multiplies the pinned detection threshold")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = run_flags.build(*run, {});
      emit(cfg, sbeam::run_experiment(cfg));
    } else if (sweep->parsed()) {
      sbeam::ExperimentConfig base;
      base.scenario = sbeam::Scenario::scaling;
      base.trials = 100;
      auto cfg = sweep_flags.build(*sweep, base);
      cfg.scenario = sbeam::Scenario::scaling;
      const auto rows = sbeam::run_experiment(cfg);
      emit(cfg, rows);
      sbeam::write_budget_table(cfg.out.empty() ? std::cerr : std::cout, cfg);
    } else if (latency->parsed()) {
      sbeam::ExperimentConfig base;
      base.scenario = sbeam::Scenario::latency;
      auto cfg = latency_flags.build(*latency, base);
      cfg.scenario = sbeam::Scenario::latency;
      const auto rows = sbeam::run_experiment(cfg);
      if (cfg.out.empty()) {
        sbeam::write_latency_table(std::cout, cfg);
      } else {
        emit(cfg, rows);
      }
    } else if (verify->parsed()) {
      return sbeam::run_verify(std::cout, verify_opts) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
