#pragma once

#include <cstddef>
#include <vector>

#include "sparsebeam/baselines.hpp"
#include "sparsebeam/beams.hpp"
#include "sparsebeam/measure.hpp"
#include "sparsebeam/recover.hpp"

namespace sparsebeam {

struct AgileOptions {
  std::size_t k = 4;             // sparsity budget; also the candidates kept per side
  std::size_t b_count = 0;       // 0: default_b_count(n, k)
  std::size_t l_hashes = 0;      // 0: ceil(log2 n)
  std::size_t fine_grid_factor = 1;
  /// Measure the k x k candidate pairs with steered beams and keep the
  /// strongest. Without it the top candidate of each side is paired.
  bool pair_check = true;
  HashOptions hash = HashOptions::practical();
};

struct AgileResult {
  AlignmentResult alignment;
  std::vector<double> rx_candidates;  // spatial frequencies, best first
  std::vector<double> tx_candidates;
  HashGeometry geometry;
};

/// Two-sided alignment: L rounds of B x B hashed measurements, soft voting
/// per side, then optional pair check. Hashes are drawn from `rng`.
AgileResult agile_align(const ChannelInstance& ch, Link& link, Engine& rng, const AgileOptions& opts = {});
AgileResult agile_align(const ChannelInstance& ch, Engine& rng, const AgileOptions& opts = {});

/// Top k candidates at least `min_separation` candidates apart (circularly),
/// best first; ties to the lowest index.
std::vector<std::size_t> top_k_separated(std::span<const double> aggregate, std::size_t k,
                                         std::size_t min_separation);

}  // namespace sparsebeam
