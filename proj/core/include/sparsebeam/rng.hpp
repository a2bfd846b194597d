#pragma once

#include <cstdint>
#include <random>

namespace sparsebeam {

/// Engine used for every seeded draw that is not tied to a frame index
/// (channel sampling, permutations, hash phases).
using Engine = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent keys from (seed, tag) pairs.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return splitmix64(splitmix64(a) ^ (b + 0x632BE59BD9B4E019ULL));
}

/// Engine for sub-stream `stream` of a master seed. Trials use
/// make_engine(master, trial) so results never depend on execution order.
inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return Engine(mix_seed(seed, stream));
}

/// Counter-based stream: the value for counter c depends only on (key, c).
/// Lets a measurement link draw per-frame CFO and noise without shared state.
class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) noexcept : key_(key) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return splitmix64(key_ ^ splitmix64(counter));
  }

  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Pair of independent standard normals (Box-Muller) for counter c.
  void normal_pair(std::uint64_t counter, double& z0, double& z1) const noexcept;

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace sparsebeam
