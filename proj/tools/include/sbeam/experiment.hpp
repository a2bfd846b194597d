#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <sparsebeam/spectrum.hpp>

#include "sbeam/config.hpp"

namespace sbeam {

/// One CSV row. Fields that do not apply to a scenario stay empty.
struct ExperimentRecord {
  std::string scheme;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t frames_used = 0;
  std::optional<double> snr_loss_db;
  std::optional<bool> success;
  std::optional<double> delay_ms;
  double wall_time_ms = 0.0;
};

inline constexpr const char* kCsvHeader =
    "scheme,n,k,trial,seed,frames_used,snr_loss_db,success,delay_ms,wall_time_ms";

/// Random channel of one trial: `paths` directions per side drawn uniformly in
/// spatial frequency (or on the grid), distinct grid cells, Rayleigh
/// magnitudes with uniform phases for more than one path, unit gain otherwise.
sparsebeam::ChannelInstance random_channel(std::size_t n, std::size_t paths, bool on_grid,
                                           double snr_db, std::uint64_t seed);

/// Runs every trial of the configured scenario. Rows are ordered by
/// (size, trial, scheme) regardless of thread count.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

/// Median and 90th percentile of snr_loss_db, success rate and mean frames
/// per scheme (and per size for the scaling scenario), frame ratios, and the
/// latency table. Everything except the latency table is computed from the
/// rows alone.
void write_summary(std::ostream& out, const ExperimentConfig& cfg,
                   const std::vector<ExperimentRecord>& records);

/// Model delays next to the reference targets for every size and client count.
void write_latency_table(std::ostream& out, const ExperimentConfig& cfg);

/// Frame budgets of every scheme per size and their ratios to agile.
void write_budget_table(std::ostream& out, const ExperimentConfig& cfg);

/// Reference delays (ms) for sizes {8, 16, 64, 128, 256}, used as calibration
/// targets of the latency model. Returns nothing for other sizes.
struct ReferenceDelay {
  double standard_one, agile_one, standard_four, agile_four;
};
std::optional<ReferenceDelay> reference_delay(std::size_t n);

/// Linear-interpolated percentile (q in [0, 1]) of a sample.
double percentile(std::vector<double> values, double q);

}  // namespace sbeam
