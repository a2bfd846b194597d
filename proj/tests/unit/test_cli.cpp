#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "sbeam/config.hpp"
#include "sbeam/experiment.hpp"
#include "sbeam/verify.hpp"

using namespace sbeam;

namespace {

std::string csv_of(const ExperimentConfig& cfg) {
  std::ostringstream out;
  write_csv(out, run_experiment(cfg));
  return out.str();
}

std::string error_of(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  try {
    read_config(in, cfg);
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return {};
}

ExperimentConfig small(Scenario s) {
  ExperimentConfig cfg;
  cfg.scenario = s;
  cfg.n = 16;
  cfg.trials = 12;
  cfg.seed = 99;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("config files") {
  ExperimentConfig cfg;
  std::istringstream in(
      "# comment line\n"
      "scenario = multipath\n"
      "n = 64   # trailing comment\n"
      "\n"
      "snr_db = inf\n"
      "schemes = agile, 802.11ad\n"
      "paths = 2,3\n"
      "fine_grid_factor = 4\n"
      "sizes = 8,16\n"
      "on_grid = true\n"
      "seed = 18446744073709551615\n");
  read_config(in, cfg);
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.scenario == Scenario::multipath);
  CHECK(cfg.n == 64);
  CHECK(std::isinf(cfg.snr_db));
  CHECK(cfg.schemes == std::vector<sparsebeam::Scheme>{sparsebeam::Scheme::agile, sparsebeam::Scheme::standard});
  CHECK(cfg.min_paths() == 2);
  CHECK(cfg.max_paths() == 3);
  CHECK(cfg.fine_grid == 4);
  CHECK(cfg.sizes == std::vector<std::size_t>{8, 16});
  CHECK(cfg.on_grid);
  CHECK(cfg.seed == 18446744073709551615ULL);
  CHECK(cfg.agile_b_count() == cfg.k);

  // Later values (flags) override earlier ones (the file).
  cfg.set("n", "128");
  CHECK(cfg.n == 128);
  cfg.set("paths", "1");
  CHECK(cfg.min_paths() == 1);
  CHECK(cfg.max_paths() == 1);
}

TEST_CASE("config errors name the key and line") {
  CHECK(error_of("n = 16\nbogus = 1\n").find("line 2") != std::string::npos);
  CHECK(error_of("bogus = 1\n").find("bogus") != std::string::npos);
  CHECK(error_of("n = sixteen\n").find("n:") != std::string::npos);
  CHECK(error_of("n\n").find("expected key = value") != std::string::npos);
  CHECK(error_of("scenario = party\n").find("scenario") != std::string::npos);
  CHECK(error_of("schemes = agile,omni\n").find("schemes") != std::string::npos);
  CHECK(error_of("n = 2\n").rfind("n:", 0) == 0);
  CHECK(error_of("gamma = 40\n").rfind("gamma:", 0) == 0);
  CHECK(error_of("paths = 3,2\n").rfind("paths:", 0) == 0);
  CHECK(error_of("ripple_db = -1\n").rfind("ripple_db:", 0) == 0);
  CHECK(error_of("n = 64\nk = 2\n").empty());
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.txt", *std::make_unique<ExperimentConfig>()),
                  std::runtime_error);
  CHECK(parse_scenario(scenario_name(Scenario::theory_validation)) == Scenario::theory_validation);
}

TEST_CASE("zero trials produce only the header") {
  auto cfg = small(Scenario::single_path);
  cfg.trials = 0;
  CHECK(csv_of(cfg) == std::string(kCsvHeader) + "\n");
}

TEST_CASE("runs are deterministic and independent of the thread count") {
  for (Scenario s : {Scenario::single_path, Scenario::multipath}) {
    auto cfg = small(s);
    const std::string a = csv_of(cfg);
    CHECK(a == csv_of(cfg));
    cfg.threads = 3;
    CHECK(a == csv_of(cfg));
    cfg.seed = 100;
    CHECK(a != csv_of(cfg));
  }
}

TEST_CASE("csv rows") {
  auto cfg = small(Scenario::single_path);
  cfg.trials = 3;
  const auto rows = run_experiment(cfg);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].scheme == "agile");
  CHECK(rows[1].scheme == "exhaustive");
  CHECK(rows[2].scheme == "802.11ad");
  for (const auto& r : rows) {
    CHECK(r.snr_loss_db.has_value());
    CHECK(r.success.has_value());
    CHECK(r.wall_time_ms == 0.0);
  }
  CHECK(rows[1].frames_used == 256);
  CHECK(rows[2].frames_used == 80);
  CHECK(rows[0].seed == rows[1].seed);
  CHECK(rows[0].seed != rows[3].seed);

  std::ostringstream out;
  write_csv(out, rows);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == kCsvHeader);
  std::getline(lines, line);
  CHECK(std::count(line.begin(), line.end(), ',') == 9);
  CHECK(line.rfind("agile,16,1,0,", 0) == 0);
}

TEST_CASE("random channels") {
  const auto a = random_channel(64, 3, false, 20.0, 5);
  const auto b = random_channel(64, 3, false, 20.0, 5);
  REQUIRE(a.paths().size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.paths()[i].rx_freq == b.paths()[i].rx_freq);
  CHECK(a.two_sided());
  CHECK(a.snr_db() == 20.0);
  CHECK(random_channel(64, 2, true, 20.0, 5).on_grid());
  const auto one = random_channel(64, 1, false, 20.0, 6);
  CHECK(std::abs(one.paths()[0].gain) == doctest::Approx(1.0));
}

TEST_CASE("latency scenario rows") {
  auto cfg = small(Scenario::latency);
  const auto rows = run_experiment(cfg);
  CHECK(rows.size() == cfg.sizes.size() * cfg.schemes.size() * cfg.clients.size());
  for (const auto& r : rows) {
    CHECK(r.delay_ms.has_value());
    CHECK_FALSE(r.snr_loss_db.has_value());
    CHECK((r.trial == 1 || r.trial == 4));
    if (r.scheme == "agile" && r.n == 256 && r.trial == 1) {
      CHECK(*r.delay_ms == doctest::Approx(1.0112).epsilon(1e-4));
      CHECK(r.frames_used == 128);
    }
  }
  std::ostringstream table;
  write_latency_table(table, cfg);
  CHECK(table.str().find("310.11") != std::string::npos);
}

TEST_CASE("scaling budgets") {
  auto cfg = small(Scenario::scaling);
  std::ostringstream out;
  write_budget_table(out, cfg);
  CHECK(out.str().find("512.00") != std::string::npos);
}

TEST_CASE("percentile") {
  CHECK(percentile({3.0, 1.0, 2.0}, 0.5) == doctest::Approx(2.0));
  CHECK(percentile({1.0, 2.0, 3.0, 4.0}, 0.5) == doctest::Approx(2.5));
  CHECK(percentile({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0}, 0.9) == doctest::Approx(10.0));
  CHECK(percentile({5.0}, 0.9) == 5.0);
  CHECK(std::isnan(percentile({}, 0.5)));
}

TEST_CASE("verification helpers") {
  CHECK(rate_tolerance(10000) == doctest::Approx(0.02));
  CHECK(rate_tolerance(100) == doctest::Approx(0.2));
  CHECK(rate_tolerance(40000) == doctest::Approx(0.02));
  CHECK(pinned_arms(1) == 4);
  CHECK(pinned_arms(2) == 4);
  CHECK(pinned_arms(3) == 2);

  const auto base = detection_rates(256, 1, 300, 7);
  CHECK(base.geometry.b_count == 16);
  CHECK_FALSE(base.theory_mode);
  CHECK(base.detection >= 0.66 - rate_tolerance(300));
  CHECK(base.rejection >= 0.66 - rate_tolerance(300));
  CHECK(detection_rates(251, 1, 10, 7).theory_mode);

  // A threshold far from the pinned one breaks one side of the check.
  const auto high = detection_rates(256, 1, 300, 7, 16.0);
  CHECK(high.detection < 0.66 - rate_tolerance(300));
  const auto low = detection_rates(256, 1, 300, 7, 0.01);
  CHECK(low.rejection < 0.66 - rate_tolerance(300));

  std::vector<DetectionTrial> per_trial;
  const auto again = detection_rates(256, 1, 300, 7, 1.0, &per_trial);
  CHECK(per_trial.size() == 300);
  CHECK(again.detection == base.detection);
}

TEST_CASE("exactness suites pass") {
  for (const auto& suite : {verify_boxcar(), verify_permutation(3), verify_factorization(3)}) {
    for (const auto& r : suite) {
      CAPTURE(r.name);
      CHECK(r.pass);
    }
  }
}
