#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <sparsebeam/mac_latency.hpp>

namespace sbeam {

enum class Scenario { single_path, multipath, scaling, latency, theory_validation };

Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario s);

/// Every knob of one experiment. Config files are flat `key = value` text
/// (`#` starts a comment); keys match the field names below.
struct ExperimentConfig {
  Scenario scenario = Scenario::single_path;
  std::size_t n = 16;
  std::size_t k = 4;              // agile sparsity budget
  std::size_t b_count = 0;        // 0: B = k
  std::size_t l_hashes = 0;       // 0: ceil(log2 n)
  std::size_t gamma = 4;
  double snr_db = 30.0;           // per-frame SNR; "inf" disables noise
  double ripple_db = 3.0;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  std::vector<sparsebeam::Scheme> schemes = {sparsebeam::Scheme::agile, sparsebeam::Scheme::exhaustive,
                                             sparsebeam::Scheme::standard};
  std::size_t fine_grid = 1;
  std::size_t paths_min = 0;      // 0: scenario default (1 single_path, 2 multipath)
  std::size_t paths_max = 0;      // 0: scenario default (1 single_path, 3 multipath)
  bool on_grid = false;           // draw path directions on the grid
  std::vector<std::size_t> sizes = {8, 16, 64, 128, 256};
  std::vector<std::size_t> clients = {1, 4};
  bool timing = false;            // fill wall_time_ms
  std::size_t threads = 0;        // 0: hardware concurrency
  std::string out;                // empty: no CSV file

  /// Sets one field from its textual value. Throws std::invalid_argument
  /// naming the key on unknown keys or malformed values.
  void set(std::string_view key, std::string_view value);
  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  std::size_t min_paths() const;
  std::size_t max_paths() const;
  std::size_t agile_b_count() const { return b_count ? b_count : k; }
};

/// Applies every `key = value` line of `in` to `cfg`. Line numbers appear in
/// error messages.
void read_config(std::istream& in, ExperimentConfig& cfg);
void load_config_file(const std::string& path, ExperimentConfig& cfg);

}  // namespace sbeam
