#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace sparsebeam {

/// Timing of the 802.11ad beacon interval. Durations in seconds.
struct MacTimingConfig {
  double bi_duration = 0.100;
  std::size_t abft_slots_per_bi = 8;
  std::size_t ssw_frames_per_slot = 16;
  double ssw_frame_duration = 15.8e-6;
  double fixed_overhead = 0.0;

  void validate() const;
};

/// Time until the last of `clients` clients finishes training.
///
/// Every BI opens with the AP sweep (frames_ap frames in the BTI), then
/// offers its A-BFT slots. Each client needs ceil(frames_client / slot size)
/// whole slots; slots go to clients round-robin without collisions and
/// leftovers wait for the next BI. The AP sweep is shared by all clients.
double alignment_delay(std::uint64_t frames_client, std::uint64_t frames_ap, std::size_t clients,
                       const MacTimingConfig& cfg = {});

enum class Scheme { agile, exhaustive, standard };

Scheme parse_scheme(std::string_view name);
std::string_view scheme_name(Scheme s);

struct FrameBudget {
  std::uint64_t total = 0;   // all alignment frames
  std::uint64_t ap = 0;      // AP-side sweep frames (BTI)
  std::uint64_t client = 0;  // frames each client sends in A-BFT slots
};

/// agile: total K^2 ceil(log2 n), K ceil(log2 n) per side.
/// exhaustive: n^2, all in client slots.
/// standard: 4n + gamma^2; 2n per side (combining is not timed).
FrameBudget scheme_frame_budget(Scheme scheme, std::size_t n, std::size_t k, std::size_t gamma = 4);

}  // namespace sparsebeam
