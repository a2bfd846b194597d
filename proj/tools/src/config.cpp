#include "sbeam/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace sbeam {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why) {
  throw std::invalid_argument(std::string(key) + ": " + std::string(why) + " (got '" +
                              std::string(value) + "')");
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v, "expected a nonnegative integer");
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad(key, v, "expected a number");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(key, v, "expected true or false");
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<std::size_t> to_size_list(std::string_view key, std::string_view v) {
  std::vector<std::size_t> out;
  for (auto item : split_list(v)) out.push_back(static_cast<std::size_t>(to_uint(key, item)));
  if (out.empty()) bad(key, v, "expected a comma-separated list of integers");
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view name) {
  if (name == "single_path") return Scenario::single_path;
  if (name == "multipath") return Scenario::multipath;
  if (name == "scaling") return Scenario::scaling;
  if (name == "latency") return Scenario::latency;
  if (name == "theory_validation") return Scenario::theory_validation;
  bad("scenario", name, "expected single_path, multipath, scaling, latency or theory_validation");
}

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::single_path: return "single_path";
    case Scenario::multipath: return "multipath";
    case Scenario::scaling: return "scaling";
    case Scenario::latency: return "latency";
    case Scenario::theory_validation: return "theory_validation";
  }
  return "unknown";
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "scenario") {
    scenario = parse_scenario(value);
  } else if (key == "n") {
    n = to_uint(key, value);
  } else if (key == "k") {
    k = to_uint(key, value);
  } else if (key == "b_count") {
    b_count = to_uint(key, value);
  } else if (key == "l_hashes") {
    l_hashes = to_uint(key, value);
  } else if (key == "gamma") {
    gamma = to_uint(key, value);
  } else if (key == "snr_db") {
    snr_db = to_double(key, value);
  } else if (key == "ripple_db") {
    ripple_db = to_double(key, value);
  } else if (key == "trials") {
    trials = to_uint(key, value);
  } else if (key == "seed") {
    seed = to_uint(key, value);
  } else if (key == "schemes") {
    schemes.clear();
    for (auto item : split_list(value)) {
      try {
        schemes.push_back(sparsebeam::parse_scheme(item));
      } catch (const std::invalid_argument&) {
        bad(key, item, "expected agile, exhaustive or 802.11ad");
      }
    }
  } else if (key == "fine_grid_factor" || key == "fine_grid") {
    fine_grid = to_uint(key, value);
  } else if (key == "paths") {
    const auto items = split_list(value);
    if (items.empty() || items.size() > 2) bad(key, value, "expected K or Kmin,Kmax");
    paths_min = to_uint(key, items.front());
    paths_max = to_uint(key, items.back());
  } else if (key == "on_grid") {
    on_grid = to_bool(key, value);
  } else if (key == "sizes") {
    sizes = to_size_list(key, value);
  } else if (key == "clients") {
    clients = to_size_list(key, value);
  } else if (key == "timing") {
    timing = to_bool(key, value);
  } else if (key == "threads") {
    threads = to_uint(key, value);
  } else if (key == "out") {
    out = std::string(value);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

std::size_t ExperimentConfig::min_paths() const {
  if (paths_min) return paths_min;
  return scenario == Scenario::multipath ? 2 : 1;
}

std::size_t ExperimentConfig::max_paths() const {
  if (paths_max) return paths_max;
  return scenario == Scenario::multipath ? 3 : 1;
}

void ExperimentConfig::validate() const {
  auto fail = [](std::string_view field, const std::string& why) {
    throw std::invalid_argument(std::string(field) + ": " + why);
  };
  if (n < 4) fail("n", "must be at least 4");
  if (k < 1) fail("k", "must be at least 1");
  if (agile_b_count() > n) fail("b_count", "must not exceed n");
  if (gamma < 1 || gamma > n) fail("gamma", "must lie in [1, n]");
  if (std::isnan(snr_db)) fail("snr_db", "must be a number or inf");
  if (!(ripple_db >= 0.0) || std::isinf(ripple_db)) fail("ripple_db", "must be finite and nonnegative");
  if (fine_grid < 1) fail("fine_grid_factor", "must be at least 1");
  if (schemes.empty()) fail("schemes", "must name at least one scheme");
  if (min_paths() < 1 || min_paths() > max_paths()) fail("paths", "need 1 <= Kmin <= Kmax");
  if (max_paths() > n / 4) fail("paths", "at most n/4 paths");
  for (auto s : sizes) {
    if (s < 4) fail("sizes", "every size must be at least 4");
  }
  for (auto c : clients) {
    if (c < 1) fail("clients", "every client count must be at least 1");
  }
}

void read_config(std::istream& in, ExperimentConfig& cfg) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(number) + ": expected key = value");
    }
    try {
      cfg.set(trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(number) + ": " + e.what());
    }
  }
}

void load_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  read_config(in, cfg);
}

}  // namespace sbeam
