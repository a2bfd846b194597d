#include "sparsebeam/mac_latency.hpp"

#include <stdexcept>
#include <string>

namespace sparsebeam {

void MacTimingConfig::validate() const {
  if (!(bi_duration > 0.0) || abft_slots_per_bi == 0 || ssw_frames_per_slot == 0 ||
      !(ssw_frame_duration > 0.0) || fixed_overhead < 0.0) {
    throw std::invalid_argument("MacTimingConfig: durations and counts must be positive");
  }
}

double alignment_delay(std::uint64_t frames_client, std::uint64_t frames_ap, std::size_t clients,
                       const MacTimingConfig& cfg) {
  cfg.validate();
  if (clients == 0) throw std::invalid_argument("alignment_delay: need at least one client");
  if (frames_client == 0) return cfg.fixed_overhead;
  const std::uint64_t per_slot = cfg.ssw_frames_per_slot;
  const std::uint64_t slots = (frames_client + per_slot - 1) / per_slot;
  const std::uint64_t last = slots * clients - 1;  // global index of the final slot
  const std::uint64_t bi = last / cfg.abft_slots_per_bi;
  const std::uint64_t slot_in_bi = last % cfg.abft_slots_per_bi;
  const double frames_in_bi = static_cast<double>(frames_ap + (slot_in_bi + 1) * per_slot);
  return static_cast<double>(bi) * cfg.bi_duration + frames_in_bi * cfg.ssw_frame_duration +
         cfg.fixed_overhead;
}

Scheme parse_scheme(std::string_view name) {
  if (name == "agile") return Scheme::agile;
  if (name == "exhaustive") return Scheme::exhaustive;
  if (name == "standard" || name == "802.11ad" || name == "11ad") return Scheme::standard;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::agile: return "agile";
    case Scheme::exhaustive: return "exhaustive";
    case Scheme::standard: return "802.11ad";
  }
  return "unknown";
}

FrameBudget scheme_frame_budget(Scheme scheme, std::size_t n, std::size_t k, std::size_t gamma) {
  if (n < 2) throw std::invalid_argument("scheme_frame_budget: n must be at least 2");
  std::uint64_t log_n = 0;
  while ((std::uint64_t{1} << log_n) < n) ++log_n;
  const auto nn = static_cast<std::uint64_t>(n);
  switch (scheme) {
    case Scheme::agile:
      return {k * k * log_n, k * log_n, k * log_n};
    case Scheme::exhaustive:
      return {nn * nn, 0, nn * nn};
    case Scheme::standard:
      return {4 * nn + gamma * gamma, 2 * nn, 2 * nn};
  }
  throw std::invalid_argument("scheme_frame_budget: unknown scheme");
}

}  // namespace sparsebeam
