#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparsebeam/beams.hpp"
#include "sparsebeam/pattern.hpp"
#include "sparsebeam/rng.hpp"
#include "sparsebeam/spectrum.hpp"

namespace sparsebeam {

/// Noiseless complex response a . v_k of one array to every path of a channel,
/// taken on the receive (or transmit) side.
enum class Side { rx, tx };
CVec path_responses(const ChannelInstance& ch, const PhasePattern& pattern, Side side);

/// Response of a single beam steered at continuous frequency `freq` to a path
/// at `path_freq`: (1/sqrt(n)) sum_m e^{2 pi j m (path_freq - freq) / n}.
cplx steered_response(std::size_t n, double freq, double path_freq);

/// Noiseless frame value for given per-path responses:
/// sum_k g_k rx_k tx_k (tx ignored for one-sided channels).
cplx combine(const ChannelInstance& ch, std::span<const cplx> rx, std::span<const cplx> tx = {});

/// The measurement link of one trial: every call consumes one frame and draws
/// its CFO phase and noise from counter-based streams keyed by the channel
/// seed, so the outcome depends only on (seed, frame index).
///
/// Frame value: y = |e^{j phi} (z + w)|, w ~ CN(0, noise_variance).
class Link {
 public:
  explicit Link(const ChannelInstance& channel, std::optional<std::uint64_t> cfo_key = std::nullopt);

  const ChannelInstance& channel() const noexcept { return channel_; }
  std::uint64_t frames_used() const noexcept { return frame_; }

  /// One-sided measurement |a . h|. Requires a one-sided channel.
  double measure_one(const PhasePattern& pattern);
  /// Two-sided measurement with receive pattern a_rx and transmit pattern a_tx.
  double measure_pair(const PhasePattern& rx, const PhasePattern& tx);
  /// Applies CFO and noise to an externally computed noiseless value.
  double measure_response(cplx z);

 private:
  ChannelInstance channel_;
  double sigma_;  // per real dimension
  CounterStream cfo_;
  CounterStream noise_;
  std::uint64_t frame_ = 0;
};

/// Magnitudes from one hash (1 x B) or a pair of hashes (B x B), row-major.
struct MeasurementSet {
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint64_t frames_used = 0;
  std::uint64_t hash_id = 0;
  std::uint64_t tx_hash_id = 0;  // two-sided only

  double at(std::size_t i, std::size_t j) const { return values.at(i * cols + j); }
  /// Sum over columns of each row (receive side of a two-sided set).
  std::vector<double> row_sums() const;
  /// Sum over rows of each column (transmit side).
  std::vector<double> col_sums() const;
  /// The same measurements with rows and columns swapped.
  MeasurementSet transposed() const;
};

/// B frames, one per bin pattern. values[b] = |a^b P' . h|.
MeasurementSet measure_hash(const HashFunction& hash, Link& link);
/// B x B frames: Y_{ij} = |rx pattern i . G . tx pattern j|.
MeasurementSet measure_two_sided(const HashFunction& rx, const HashFunction& tx, Link& link);

/// Convenience overloads for a fresh link on `channel`.
MeasurementSet measure_hash(const HashFunction& hash, const ChannelInstance& channel);
MeasurementSet measure_two_sided(const HashFunction& rx, const HashFunction& tx,
                                 const ChannelInstance& channel);

}  // namespace sparsebeam
