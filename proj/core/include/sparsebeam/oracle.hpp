#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sparsebeam/spectrum.hpp"

namespace sparsebeam::oracle {

/// Noiseless received power of every single grid beam (one-sided, n values)
/// or every grid beam pair (two-sided, n x n row-major, rx major).
/// Evaluated by direct summation over antennas, independent of the
/// measurement and recovery code.
struct DensePowerMap {
  std::size_t n = 0;
  bool two_sided = false;
  std::vector<double> power;

  double at(std::size_t rx, std::size_t tx = 0) const { return power.at(two_sided ? rx * n + tx : rx); }
};

DensePowerMap dense_power_map(const ChannelInstance& ch);

/// Receive-side map with an ideal omnidirectional far end (unit response to
/// every path); defined for one- and two-sided channels.
std::vector<double> rx_power_map(const ChannelInstance& ch);

/// Top-k receive directions of rx_power_map, ties to the lowest index.
std::vector<std::size_t> oracle_recover(const ChannelInstance& ch, std::size_t k);

/// Top-k (rx, tx) cells of a two-sided map.
std::vector<std::pair<std::size_t, std::size_t>> oracle_recover_pairs(const ChannelInstance& ch,
                                                                      std::size_t k);

}  // namespace sparsebeam::oracle
