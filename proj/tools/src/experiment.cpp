#include "sbeam/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include <sparsebeam/agile.hpp>
#include <sparsebeam/baselines.hpp>
#include <sparsebeam/mac_latency.hpp>

#include "sbeam/verify.hpp"

namespace sbeam {

using sparsebeam::ChannelInstance;
using sparsebeam::Engine;
using sparsebeam::Path;
using sparsebeam::Scheme;

namespace {

constexpr std::uint64_t kAgileStream = 0xA61E;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::size_t strongest_path(const ChannelInstance& ch) {
  const auto paths = ch.paths();
  std::size_t best = 0;
  for (std::size_t k = 1; k < paths.size(); ++k) {
    if (std::abs(paths[k].gain) > std::abs(paths[best].gain)) best = k;
  }
  return best;
}

bool near(double choice, double truth, std::size_t n) {
  return sparsebeam::circular_distance(choice, truth, n) < 1.0;
}

double one_client_delay_ms(Scheme s, const ExperimentConfig& cfg, std::size_t n) {
  const auto budget = sparsebeam::scheme_frame_budget(s, n, cfg.k, cfg.gamma);
  return 1e3 * sparsebeam::alignment_delay(budget.client, budget.ap, 1);
}

// All rows of one alignment trial, one per configured scheme.
std::vector<ExperimentRecord> alignment_trial(const ExperimentConfig& cfg, std::size_t n,
                                              std::size_t trial, std::uint64_t seed) {
  const std::size_t span = cfg.max_paths() - cfg.min_paths() + 1;
  const std::size_t paths = cfg.min_paths() + trial % span;
  const ChannelInstance ch = random_channel(n, paths, cfg.on_grid, cfg.snr_db, seed);
  const Path& best = ch.paths()[strongest_path(ch)];
  // Multipath runs are scored against exhaustive search, the others against
  // the best achievable alignment.
  const bool vs_exhaustive = cfg.scenario == Scenario::multipath;
  const double optimal = sparsebeam::optimal_snr_db(ch);
  std::optional<double> exhaustive_snr;
  auto exhaustive_reference = [&] {
    if (!exhaustive_snr) exhaustive_snr = sparsebeam::exhaustive_search(ch).achieved_snr_db;
    return *exhaustive_snr;
  };

  std::vector<ExperimentRecord> rows;
  std::vector<double> achieved;
  for (Scheme s : cfg.schemes) {
    const auto start = std::chrono::steady_clock::now();
    sparsebeam::AlignmentResult res;
    bool success = false;
    switch (s) {
      case Scheme::agile: {
        Engine rng = sparsebeam::make_engine(seed, kAgileStream);
        sparsebeam::AgileOptions opts;
        opts.k = cfg.k;
        opts.b_count = cfg.agile_b_count();
        opts.l_hashes = cfg.l_hashes;
        opts.fine_grid_factor = cfg.fine_grid;
        const auto out = sparsebeam::agile_align(ch, rng, opts);
        res = out.alignment;
        const bool rx_hit = std::any_of(out.rx_candidates.begin(), out.rx_candidates.end(),
                                        [&](double c) { return near(c, best.rx_freq, n); });
        const bool tx_hit = std::any_of(out.tx_candidates.begin(), out.tx_candidates.end(),
                                        [&](double c) { return near(c, best.tx_freq, n); });
        success = rx_hit && tx_hit;
        break;
      }
      case Scheme::exhaustive:
        res = sparsebeam::exhaustive_search(ch);
        exhaustive_snr = res.achieved_snr_db;
        success = near(res.rx_choice, best.rx_freq, n) && near(res.tx_choice, best.tx_freq, n);
        break;
      case Scheme::standard:
        res = sparsebeam::standard_11ad(ch, {cfg.gamma, cfg.ripple_db});
        success = near(res.rx_choice, best.rx_freq, n) && near(res.tx_choice, best.tx_freq, n);
        break;
    }
    const auto stop = std::chrono::steady_clock::now();
    ExperimentRecord row;
    row.scheme = std::string(sparsebeam::scheme_name(s));
    row.n = n;
    row.k = paths;
    row.trial = trial;
    row.seed = seed;
    row.frames_used = res.frames_used;
    row.success = success;
    row.delay_ms = one_client_delay_ms(s, cfg, n);
    if (cfg.timing) row.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    rows.push_back(std::move(row));
    achieved.push_back(res.achieved_snr_db);
  }
  const double reference = vs_exhaustive ? exhaustive_reference() : optimal;
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].snr_loss_db = reference - achieved[i];
  return rows;
}

std::vector<ExperimentRecord> detection_trials(const ExperimentConfig& cfg) {
  std::vector<ExperimentRecord> rows;
  for (std::size_t k = cfg.min_paths(); k <= cfg.max_paths(); ++k) {
    std::vector<DetectionTrial> per_trial;
    const DetectionRates rates = detection_rates(cfg.n, k, cfg.trials, cfg.seed, 1.0, &per_trial);
    for (std::size_t t = 0; t < per_trial.size(); ++t) {
      for (int kind = 0; kind < 2; ++kind) {
        ExperimentRecord row;
        row.scheme = kind == 0 ? "hash-detect" : "hash-reject";
        row.n = cfg.n;
        row.k = k;
        row.trial = t;
        row.seed = cfg.seed;
        row.frames_used = rates.geometry.b_count;
        row.success = kind == 0 ? per_trial[t].detected : per_trial[t].rejected;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<ExperimentRecord> latency_rows(const ExperimentConfig& cfg) {
  std::vector<ExperimentRecord> rows;
  for (std::size_t n : cfg.sizes) {
    for (Scheme s : cfg.schemes) {
      const auto budget = sparsebeam::scheme_frame_budget(s, n, cfg.k, cfg.gamma);
      for (std::size_t c : cfg.clients) {
        ExperimentRecord row;
        row.scheme = std::string(sparsebeam::scheme_name(s));
        row.n = n;
        row.k = cfg.k;
        row.trial = c;  // latency rows carry the client count in the trial column
        row.seed = cfg.seed;
        row.frames_used = budget.total;
        row.delay_ms = 1e3 * sparsebeam::alignment_delay(budget.client, budget.ap, c);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

// Runs job(i) for i in [0, count) on a small thread pool.
template <typename Job>
void parallel_for(std::size_t count, std::size_t threads, Job job) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(count, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          job(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

ChannelInstance random_channel(std::size_t n, std::size_t paths, bool on_grid, double snr_db,
                               std::uint64_t seed) {
  Engine rng = sparsebeam::make_engine(seed, 0xC4A7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto nn = static_cast<double>(n);
  std::vector<Path> out;
  std::set<std::pair<long long, long long>> cells;
  while (out.size() < paths) {
    double fr = unit(rng) * nn;
    double ft = unit(rng) * nn;
    if (on_grid) {
      fr = std::floor(fr);
      ft = std::floor(ft);
    }
    const auto cell_r = std::llround(fr) % static_cast<long long>(n);
    const auto cell_t = std::llround(ft) % static_cast<long long>(n);
    const double phase = 2.0 * sparsebeam::kPi * unit(rng);
    const double magnitude = paths == 1 ? 1.0 : std::hypot(normal(rng), normal(rng)) / std::sqrt(2.0);
    if (!cells.insert({cell_r, cell_t}).second) continue;
    out.push_back({fr, ft, std::polar(magnitude, phase)});
  }
  return ChannelInstance(n, std::move(out), true, snr_db, seed);
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.scenario) {
    case Scenario::latency:
      return latency_rows(cfg);
    case Scenario::theory_validation:
      return detection_trials(cfg);
    case Scenario::single_path:
    case Scenario::multipath:
    case Scenario::scaling:
      break;
  }
  const std::vector<std::size_t> sizes =
      cfg.scenario == Scenario::scaling ? cfg.sizes : std::vector<std::size_t>{cfg.n};
  std::vector<std::vector<ExperimentRecord>> slots(sizes.size() * cfg.trials);
  parallel_for(slots.size(), cfg.threads, [&](std::size_t job) {
    const std::size_t size_index = job / std::max<std::size_t>(cfg.trials, 1);
    const std::size_t trial = job % std::max<std::size_t>(cfg.trials, 1);
    const std::size_t n = sizes[size_index];
    const std::uint64_t base = cfg.scenario == Scenario::scaling ? sparsebeam::mix_seed(cfg.seed, n) : cfg.seed;
    slots[job] = alignment_trial(cfg, n, trial, sparsebeam::mix_seed(base, trial));
  });
  std::vector<ExperimentRecord> rows;
  for (auto& s : slots) {
    for (auto& r : s) rows.push_back(std::move(r));
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.scheme << ',' << r.n << ',' << r.k << ',' << r.trial << ',' << r.seed << ','
        << r.frames_used << ',';
    if (r.snr_loss_db) out << format_double(*r.snr_loss_db);
    out << ',';
    if (r.success) out << (*r.success ? 1 : 0);
    out << ',';
    if (r.delay_ms) out << format_double(*r.delay_ms);
    out << ',' << format_double(r.wall_time_ms) << '\n';
  }
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

void write_summary(std::ostream& out, const ExperimentConfig& cfg,
                   const std::vector<ExperimentRecord>& records) {
  struct Group {
    std::vector<double> losses;
    std::size_t successes = 0, rated = 0, rows = 0;
    double frames = 0.0;
  };
  std::map<std::pair<std::size_t, std::string>, Group> groups;
  for (const auto& r : records) {
    auto& g = groups[{r.n, r.scheme}];
    ++g.rows;
    g.frames += static_cast<double>(r.frames_used);
    if (r.snr_loss_db) g.losses.push_back(*r.snr_loss_db);
    if (r.success) {
      ++g.rated;
      if (*r.success) ++g.successes;
    }
  }
  char line[256];
  out << "scenario " << scenario_name(cfg.scenario) << ", " << records.size() << " rows\n";
  if (cfg.scenario == Scenario::latency) {
    write_latency_table(out, cfg);
    return;
  }
  if (cfg.scenario == Scenario::theory_validation) {
    std::map<std::pair<std::size_t, std::string>, std::pair<std::size_t, std::size_t>> rates;
    for (const auto& r : records) {
      auto& [hit, total] = rates[{r.k, r.scheme}];
      ++total;
      if (r.success && *r.success) ++hit;
    }
    for (const auto& [key, v] : rates) {
      std::snprintf(line, sizeof line, "  K=%zu %-15s rate %.4f over %zu trials\n", key.first,
                    key.second.c_str(), static_cast<double>(v.first) / static_cast<double>(v.second),
                    v.second);
      out << line;
    }
    return;
  }
  out << "  snr loss reference: "
      << (cfg.scenario == Scenario::multipath ? "exhaustive search" : "optimal alignment") << '\n';
  std::snprintf(line, sizeof line, "  %-6s %-11s %10s %10s %9s %12s\n", "n", "scheme", "median_dB",
                "p90_dB", "success", "mean_frames");
  out << line;
  for (const auto& [key, g] : groups) {
    std::snprintf(line, sizeof line, "  %-6zu %-11s %10.3f %10.3f %9.3f %12.1f\n", key.first,
                  key.second.c_str(), percentile(g.losses, 0.5), percentile(g.losses, 0.9),
                  g.rated ? static_cast<double>(g.successes) / static_cast<double>(g.rated) : 0.0,
                  g.frames / static_cast<double>(g.rows));
    out << line;
  }
  std::set<std::size_t> sizes;
  for (const auto& [key, g] : groups) sizes.insert(key.first);
  for (std::size_t n : sizes) {
    auto agile = groups.find({n, "agile"});
    if (agile == groups.end() || agile->second.frames == 0.0) continue;
    for (const char* other : {"exhaustive", "802.11ad"}) {
      auto it = groups.find({n, other});
      if (it == groups.end()) continue;
      std::snprintf(line, sizeof line, "  n=%zu frames %s/agile = %.2f\n", n, other,
                    it->second.frames / agile->second.frames);
      out << line;
    }
  }
}

void write_budget_table(std::ostream& out, const ExperimentConfig& cfg) {
  char line[256];
  out << "  frame budgets, K=" << cfg.k << ", gamma=" << cfg.gamma << '\n';
  std::snprintf(line, sizeof line, "  %-6s %10s %12s %10s %16s %14s\n", "n", "agile", "exhaustive",
                "802.11ad", "exhaustive/agile", "802.11ad/agile");
  out << line;
  for (std::size_t n : cfg.sizes) {
    const auto a = sparsebeam::scheme_frame_budget(Scheme::agile, n, cfg.k, cfg.gamma).total;
    const auto e = sparsebeam::scheme_frame_budget(Scheme::exhaustive, n, cfg.k, cfg.gamma).total;
    const auto s = sparsebeam::scheme_frame_budget(Scheme::standard, n, cfg.k, cfg.gamma).total;
    std::snprintf(line, sizeof line, "  %-6zu %10llu %12llu %10llu %16.2f %14.2f\n", n,
                  static_cast<unsigned long long>(a), static_cast<unsigned long long>(e),
                  static_cast<unsigned long long>(s), static_cast<double>(e) / static_cast<double>(a),
                  static_cast<double>(s) / static_cast<double>(a));
    out << line;
  }
}

std::optional<ReferenceDelay> reference_delay(std::size_t n) {
  switch (n) {
    case 8: return ReferenceDelay{0.51, 0.44, 1.27, 1.20};
    case 16: return ReferenceDelay{1.01, 0.51, 2.53, 1.26};
    case 64: return ReferenceDelay{4.04, 0.89, 304.04, 2.40};
    case 128: return ReferenceDelay{106.07, 0.95, 706.07, 2.46};
    case 256: return ReferenceDelay{310.11, 1.01, 1510.11, 2.53};
    default: return std::nullopt;
  }
}

void write_latency_table(std::ostream& out, const ExperimentConfig& cfg) {
  char line[256];
  out << "  alignment delay in ms (model / target), K=" << cfg.k << ", gamma=" << cfg.gamma << '\n';
  std::snprintf(line, sizeof line, "  %-6s %-8s %-11s %10s %10s %10s\n", "n", "clients", "scheme",
                "model", "target", "residual");
  out << line;
  for (std::size_t n : cfg.sizes) {
    const auto ref = reference_delay(n);
    for (std::size_t c : cfg.clients) {
      for (Scheme s : cfg.schemes) {
        const auto budget = sparsebeam::scheme_frame_budget(s, n, cfg.k, cfg.gamma);
        const double model = 1e3 * sparsebeam::alignment_delay(budget.client, budget.ap, c);
        std::optional<double> target;
        if (ref && (c == 1 || c == 4)) {
          if (s == Scheme::agile) target = c == 1 ? ref->agile_one : ref->agile_four;
          if (s == Scheme::standard) target = c == 1 ? ref->standard_one : ref->standard_four;
        }
        if (target) {
          std::snprintf(line, sizeof line, "  %-6zu %-8zu %-11s %10.3f %10.2f %+10.3f\n", n, c,
                        std::string(sparsebeam::scheme_name(s)).c_str(), model, *target, model - *target);
        } else {
          std::snprintf(line, sizeof line, "  %-6zu %-8zu %-11s %10.3f %10s %10s\n", n, c,
                        std::string(sparsebeam::scheme_name(s)).c_str(), model, "-", "-");
        }
        out << line;
      }
    }
  }
}

}  // namespace sbeam
