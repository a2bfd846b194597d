#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sparsebeam/measure.hpp"
#include "sparsebeam/spectrum.hpp"

namespace sparsebeam {

/// Outcome of one alignment procedure. Choices are spatial frequencies in grid
/// units; on-grid schemes report integers.
struct AlignmentResult {
  double rx_choice = 0.0;
  double tx_choice = 0.0;
  std::uint64_t frames_used = 0;
  double achieved_snr_db = 0.0;

  std::size_t rx_index(std::size_t n) const;
  std::size_t tx_index(std::size_t n) const;
};

/// Post-alignment SNR with exact matched beams at the chosen frequencies:
/// |sum_k g_k r_k t_k|^2 / noise_variance. Noiseless channels are referenced
/// to the channel's reference power instead, so losses stay comparable.
double achieved_snr_db(const ChannelInstance& ch, double rx_freq, double tx_freq);

/// Best achievable SNR: the maximum of achieved_snr_db over every path's own
/// (rx, tx) frequencies and every grid pair.
double optimal_snr_db(const ChannelInstance& ch);

/// reference - achieved. Negative when the scheme beats the reference.
double snr_loss(const AlignmentResult& result, double reference_snr_db);

/// All n x n single-beam pairs, one frame each; the strongest measured pair wins.
AlignmentResult exhaustive_search(const ChannelInstance& ch);
AlignmentResult exhaustive_search(const ChannelInstance& ch, Link& link);

/// Quasi-omnidirectional pattern: unit gain with a per-direction ripple drawn
/// in dB and rescaled to span exactly [-ripple_db, 0].
struct QuasiOmniModel {
  double ripple_db = 3.0;
  std::uint64_t seed = 0;
};

/// Amplitude response (linear, <= 1) per grid direction.
std::vector<double> quasi_omni(std::size_t n, const QuasiOmniModel& model);

struct Standard11adOptions {
  std::size_t gamma = 4;
  double ripple_db = 3.0;
};

/// Three-stage training. SLS: each side sweeps its n sectors against a
/// quasi-omni far end. MID: the same with a second quasi-omni realization.
/// Each side keeps its gamma best sectors by mean SLS+MID power; BC measures
/// the gamma^2 pairs. frames = 2n + 2n + gamma^2.
AlignmentResult standard_11ad(const ChannelInstance& ch, const Standard11adOptions& opts = {});
AlignmentResult standard_11ad(const ChannelInstance& ch, Link& link, const Standard11adOptions& opts = {});

/// Frame count of standard_11ad.
std::uint64_t standard_11ad_frames(std::size_t n, std::size_t gamma);

}  // namespace sparsebeam
