#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "sparsebeam/fourier.hpp"
#include "sparsebeam/rng.hpp"

namespace sparsebeam {

struct SpectrumEntry {
  std::size_t index;
  cplx amplitude;
};

/// K-sparse complex vector over the n direction bins.
class DirectionSpectrum {
 public:
  /// Throws std::invalid_argument on duplicate indices, std::out_of_range on
  /// indices outside [0, n).
  DirectionSpectrum(std::size_t n, std::vector<SpectrumEntry> entries);

  static DirectionSpectrum zero(std::size_t n) { return DirectionSpectrum(n, {}); }
  /// Keeps the nonzero entries of a dense length-n vector.
  static DirectionSpectrum from_dense(std::span<const cplx> dense);

  std::size_t n() const noexcept { return n_; }
  std::size_t sparsity() const noexcept { return entries_.size(); }
  std::span<const SpectrumEntry> entries() const noexcept { return entries_; }
  std::vector<std::size_t> support() const;

  double energy() const noexcept;
  /// Copy scaled to unit energy. Throws on the zero vector.
  DirectionSpectrum normalized() const;
  CVec dense() const;

 private:
  std::size_t n_;
  std::vector<SpectrumEntry> entries_;  // sorted by index
};

/// One path direction as a physical angle with a complex gain.
struct PathSpec {
  double angle_deg;
  cplx gain{1.0, 0.0};
};

/// A physical path seen by both arrays: arrival at the receiver, departure
/// from the transmitter. The path's channel gain is rx.gain * tx.gain.
struct PathPair {
  PathSpec rx;
  PathSpec tx;
};

/// Internal path representation: spatial frequencies in grid units, so an
/// on-grid path has an integer frequency equal to its direction index.
struct Path {
  double rx_freq;
  double tx_freq;
  cplx gain;
};

struct GridPath {
  std::size_t rx;
  std::size_t tx;
  cplx gain;
};

inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// A propagation channel between a transmitter and a receiver with n-element
/// arrays. One-sided channels model an omnidirectional transmitter (tx_freq
/// is ignored). Value type; the seed keys every random stream drawn while
/// measuring it.
class ChannelInstance {
 public:
  ChannelInstance(std::size_t n, std::vector<Path> paths, bool two_sided, double snr_db,
                  std::uint64_t seed);

  std::size_t n() const noexcept { return n_; }
  std::span<const Path> paths() const noexcept { return paths_; }
  bool two_sided() const noexcept { return two_sided_; }
  double snr_db() const noexcept { return snr_db_; }
  std::uint64_t seed() const noexcept { return seed_; }
  bool on_grid() const noexcept;

  /// Antenna-domain receive vector h = F' x (one-sided view; sums paths).
  CVec rx_antenna() const;

  /// Receive/transmit direction spectra. Requires on-grid paths; paths that
  /// share a direction are summed (for a separable channel the per-side
  /// amplitudes are recovered only up to the product structure).
  DirectionSpectrum rx_spectrum() const;
  DirectionSpectrum tx_spectrum() const;
  /// Dense projection of the receive side onto the grid: F h.
  CVec rx_grid_projection() const;

  /// Mean noiseless measurement power over random unit-modulus patterns:
  /// ||h||^2 one-sided, ||G||_F^2 two-sided. The SNR is defined against it.
  double reference_power() const;
  /// Complex noise variance per frame; 0 when snr_db is +infinity.
  double noise_variance() const;

  ChannelInstance with_snr(double snr_db) const;
  ChannelInstance with_seed(std::uint64_t seed) const;

 private:
  std::size_t n_;
  std::vector<Path> paths_;
  bool two_sided_;
  double snr_db_;
  std::uint64_t seed_;
};

struct ChannelOptions {
  bool two_sided = true;
  /// Scale gains so the reference power is 1.
  bool normalize = false;
};

/// Channel from physical angles. Requires 1 <= paths <= n/4 and distinct
/// (rx, tx) grid cells; throws std::invalid_argument otherwise.
ChannelInstance make_channel(std::size_t n, std::span<const PathPair> paths, double snr_db,
                             std::uint64_t seed, ChannelOptions opts = {});
/// One-sided variant: an omnidirectional transmitter.
ChannelInstance make_channel(std::size_t n, std::span<const PathSpec> paths, double snr_db,
                             std::uint64_t seed, ChannelOptions opts = {.two_sided = false});
/// On-grid channel from explicit direction indices.
ChannelInstance make_grid_channel(std::size_t n, std::span<const GridPath> paths, double snr_db,
                                  std::uint64_t seed, ChannelOptions opts = {});
/// One-sided on-grid channel carrying exactly the spectrum x.
ChannelInstance make_one_sided_channel(const DirectionSpectrum& x, double snr_db = kNoNoise,
                                       std::uint64_t seed = 0);
/// Rank-one two-sided channel G = (F' x_rx)(F' x_tx)^T: every receive direction
/// couples with every transmit direction.
ChannelInstance make_separable_channel(const DirectionSpectrum& x_rx, const DirectionSpectrum& x_tx,
                                       double snr_db = kNoNoise, std::uint64_t seed = 0);

/// Random K-sparse spectrum with uniform random phases. Entries are at least
/// `min_separation` grid steps apart (circularly). With equal_energy every
/// entry has energy 1/K; otherwise amplitudes are drawn Rayleigh and the
/// result normalized to unit energy.
DirectionSpectrum sample_sparse_spectrum(std::size_t n, std::size_t k, Engine& rng,
                                         bool equal_energy = true,
                                         std::size_t min_separation = 1);

}  // namespace sparsebeam
