#include "sparsebeam/agile.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sparsebeam {

std::vector<std::size_t> top_k_separated(std::span<const double> aggregate, std::size_t k,
                                         std::size_t min_separation) {
  std::vector<std::size_t> order(aggregate.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return aggregate[a] > aggregate[b]; });
  std::vector<std::size_t> out;
  for (std::size_t c : order) {
    if (out.size() == k) break;
    const bool far = std::all_of(out.begin(), out.end(), [&](std::size_t o) {
      return circular_distance(static_cast<double>(o), static_cast<double>(c), aggregate.size()) >=
             static_cast<double>(min_separation);
    });
    if (far) out.push_back(c);
  }
  return out;
}

AgileResult agile_align(const ChannelInstance& ch, Engine& rng, const AgileOptions& opts) {
  Link link(ch);
  return agile_align(ch, link, rng, opts);
}

AgileResult agile_align(const ChannelInstance& ch, Link& link, Engine& rng, const AgileOptions& opts) {
  if (!ch.two_sided()) throw std::logic_error("agile_align: channel must be two-sided");
  if (opts.k < 1 || opts.fine_grid_factor < 1) throw std::invalid_argument("agile_align: bad options");
  const std::size_t n = ch.n();
  FourierContext ctx(n);
  const std::size_t b_target = opts.b_count ? opts.b_count : default_b_count(n, opts.k);
  const HashGeometry geometry = HashGeometry::for_sparsity(n, b_target);
  const std::size_t l_count = opts.l_hashes ? opts.l_hashes : default_l_hashes(n);

  std::vector<HashFunction> rx_hashes, tx_hashes;
  std::vector<MeasurementSet> sets;
  rx_hashes.reserve(l_count);
  tx_hashes.reserve(l_count);
  sets.reserve(l_count);
  const std::uint64_t before = link.frames_used();
  for (std::size_t l = 0; l < l_count; ++l) {
    rx_hashes.push_back(build_hash(ctx, geometry, rng, opts.hash));
    tx_hashes.push_back(build_hash(ctx, geometry, rng, opts.hash));
    sets.push_back(measure_two_sided(rx_hashes.back(), tx_hashes.back(), link));
  }
  std::vector<TwoSidedRound> rounds;
  for (std::size_t l = 0; l < l_count; ++l) rounds.push_back({&rx_hashes[l], &tx_hashes[l], &sets[l]});

  DetectionConfig cfg;
  cfg.k = opts.k;
  cfg.b_count = geometry.b_count;
  cfg.l_hashes = l_count;
  cfg.fine_grid_factor = opts.fine_grid_factor;
  const TwoSidedRecovery rec = recover_two_sided(rounds, cfg);

  const double f = static_cast<double>(opts.fine_grid_factor);
  const std::size_t keep = opts.pair_check ? opts.k : 1;
  AgileResult out;
  out.geometry = geometry;
  for (std::size_t c : top_k_separated(rec.rx_scores.log_aggregate, keep, opts.fine_grid_factor)) {
    out.rx_candidates.push_back(static_cast<double>(c) / f);
  }
  for (std::size_t c : top_k_separated(rec.tx_scores.log_aggregate, keep, opts.fine_grid_factor)) {
    out.tx_candidates.push_back(static_cast<double>(c) / f);
  }

  AlignmentResult& res = out.alignment;
  res.rx_choice = out.rx_candidates.front();
  res.tx_choice = out.tx_candidates.front();
  if (opts.pair_check && (out.rx_candidates.size() > 1 || out.tx_candidates.size() > 1)) {
    double best = -1.0;
    for (double r : out.rx_candidates) {
      for (double t : out.tx_candidates) {
        cplx z{0.0, 0.0};
        for (const auto& p : ch.paths()) {
          z += p.gain * steered_response(n, r, p.rx_freq) * steered_response(n, t, p.tx_freq);
        }
        const double y = link.measure_response(z);
        if (y > best) {
          best = y;
          res.rx_choice = r;
          res.tx_choice = t;
        }
      }
    }
  }
  res.frames_used = link.frames_used() - before;
  res.achieved_snr_db = achieved_snr_db(ch, res.rx_choice, res.tx_choice);
  return out;
}

}  // namespace sparsebeam
