#include "sparsebeam/recover.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sparsebeam {

void DetectionConfig::validate() const {
  if (k < 1) throw std::invalid_argument("DetectionConfig: k must be at least 1");
  if (fine_grid_factor < 1) throw std::invalid_argument("DetectionConfig: fine_grid_factor must be at least 1");
}

std::size_t default_b_count(std::size_t n, std::size_t k) {
  const std::size_t target = std::max<std::size_t>(4, 2 * k);
  // Smallest B = n / r^2 >= target.
  return HashGeometry::for_sparsity(n, target).b_count;
}

std::size_t default_l_hashes(std::size_t n) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < n) ++l;
  return std::max<std::size_t>(l, 1);
}

double score(const HashFunction& hash, std::span<const double> y, std::size_t i) {
  if (y.size() != hash.b_count()) throw std::invalid_argument("score: hash/measurement mismatch");
  if (i >= hash.n()) throw std::out_of_range("score: direction out of range");
  double t = 0.0;
  for (std::size_t b = 0; b < y.size(); ++b) t += y[b] * y[b] * hash.coverage(b, i);
  return t;
}

namespace {

std::span<const double> one_sided_values(const HashFunction& hash, const MeasurementSet& ms) {
  if (ms.rows != 1 || ms.hash_id != hash.id()) {
    throw std::invalid_argument("score: measurements were not produced by this hash");
  }
  return ms.values;
}

}  // namespace

double score(const HashFunction& hash, const MeasurementSet& ms, std::size_t i) {
  return score(hash, one_sided_values(hash, ms), i);
}

std::vector<double> score_all(const HashFunction& hash, std::span<const double> y) {
  if (y.size() != hash.b_count()) throw std::invalid_argument("score_all: hash/measurement mismatch");
  std::vector<double> t(hash.n(), 0.0);
  for (std::size_t b = 0; b < y.size(); ++b) {
    const double w = y[b] * y[b];
    if (w == 0.0) continue;
    const auto row = hash.coverage_row(b);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += w * row[i];
  }
  return t;
}

std::vector<double> score_all(const HashFunction& hash, const MeasurementSet& ms) {
  return score_all(hash, one_sided_values(hash, ms));
}

double estimate_energy(const HashFunction& hash, const MeasurementSet& ms, std::size_t i) {
  const double g = hash.geometry().gain();
  return score(hash, ms, i) / (g * g);
}

double estimate_total_energy(const HashFunction& hash, std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return s / hash.mean_total_coverage();
}

double auto_threshold(const HashFunction& hash, double energy, std::size_t k, double kappa) {
  const double g = hash.geometry().gain();
  return kappa * energy * g * g / static_cast<double>(k);
}

std::vector<std::size_t> detect_hard(const std::vector<std::vector<double>>& tables,
                                     std::span<const double> thresholds) {
  if (tables.empty()) return {};
  if (thresholds.size() != tables.size()) throw std::invalid_argument("detect_hard: one threshold per table");
  const std::size_t n = tables.front().size();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t votes = 0;
    for (std::size_t l = 0; l < tables.size(); ++l) {
      if (tables[l].at(i) >= thresholds[l]) ++votes;
    }
    if (2 * votes > tables.size()) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> detect_hard(const std::vector<std::vector<double>>& tables, double threshold) {
  const std::vector<double> th(tables.size(), threshold);
  return detect_hard(tables, th);
}

ScoreTable soft_vote(std::vector<std::vector<double>> tables) {
  if (tables.empty()) throw std::invalid_argument("soft_vote: need at least one table");
  ScoreTable st;
  st.n_candidates = tables.front().size();
  st.log_aggregate.assign(st.n_candidates, 0.0);
  for (const auto& t : tables) {
    if (t.size() != st.n_candidates) throw std::invalid_argument("soft_vote: tables differ in size");
    std::vector<double> positive;
    positive.reserve(t.size());
    for (double v : t) {
      if (v < 0.0) throw std::invalid_argument("soft_vote: scores must be nonnegative");
      if (v > 0.0) positive.push_back(v);
    }
    double eps = DBL_MIN;
    if (!positive.empty()) {
      auto mid = positive.begin() + static_cast<std::ptrdiff_t>(positive.size() / 2);
      std::nth_element(positive.begin(), mid, positive.end());
      eps = std::max(1e-3 * *mid, DBL_MIN);
    }
    for (std::size_t i = 0; i < t.size(); ++i) st.log_aggregate[i] += std::log(std::max(t[i], eps));
  }
  st.per_hash = std::move(tables);
  return st;
}

std::vector<std::size_t> recover_top_k(std::span<const double> aggregate, std::size_t k) {
  if (k > aggregate.size()) throw std::out_of_range("recover_top_k: k exceeds candidate count");
  std::vector<std::size_t> idx(aggregate.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto better = [&](std::size_t a, std::size_t b) {
    return aggregate[a] > aggregate[b] || (aggregate[a] == aggregate[b] && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), better);
  idx.resize(k);
  return idx;
}

std::vector<std::size_t> recover_top_k(const ScoreTable& table, std::size_t k) {
  return recover_top_k(table.log_aggregate, k);
}

std::vector<double> fine_grid_score(const HashFunction& hash, std::span<const double> y,
                                    std::size_t factor) {
  if (factor < 1) throw std::invalid_argument("fine_grid_score: factor must be at least 1");
  if (y.size() != hash.b_count()) throw std::invalid_argument("fine_grid_score: hash/measurement mismatch");
  const std::size_t n = hash.n();
  const std::size_t m = n * factor;
  const double scale = 1.0 / static_cast<double>(n);  // |1/sqrt(n)|^2
  std::vector<double> t(m, 0.0);
  CVec padded(m);
  for (std::size_t b = 0; b < y.size(); ++b) {
    const double w = y[b] * y[b];
    if (w == 0.0) continue;
    std::fill(padded.begin(), padded.end(), cplx{0.0, 0.0});
    const auto weights = hash.patterns()[b].weights();
    std::copy(weights.begin(), weights.end(), padded.begin());
    // a . v(c / factor) = (1/sqrt n) sum_m a_m e^{2 pi j m c / (n factor)}
    const CVec resp = dft(padded, +1);
    for (std::size_t c = 0; c < m; ++c) t[c] += w * std::norm(resp[c]) * scale;
  }
  return t;
}

ScoreTable fine_grid_score(std::span<const HashFunction> hashes,
                           std::span<const MeasurementSet> measurements, std::size_t factor) {
  if (hashes.size() != measurements.size() || hashes.empty()) {
    throw std::invalid_argument("fine_grid_score: need one measurement set per hash");
  }
  std::vector<std::vector<double>> tables;
  tables.reserve(hashes.size());
  for (std::size_t l = 0; l < hashes.size(); ++l) {
    tables.push_back(fine_grid_score(hashes[l], one_sided_values(hashes[l], measurements[l]), factor));
  }
  return soft_vote(std::move(tables));
}

OneSidedRecovery recover_one_sided(std::span<const HashFunction* const> hashes,
                                   std::span<const std::vector<double>> y, const DetectionConfig& cfg) {
  cfg.validate();
  if (hashes.empty() || hashes.size() != y.size()) {
    throw std::invalid_argument("recover_one_sided: need one measurement vector per hash");
  }
  std::vector<std::vector<double>> tables;
  std::vector<double> thresholds;
  tables.reserve(hashes.size());
  double energy = 0.0;
  for (std::size_t l = 0; l < hashes.size(); ++l) {
    const HashFunction& h = *hashes[l];
    tables.push_back(cfg.fine_grid_factor > 1 ? fine_grid_score(h, y[l], cfg.fine_grid_factor)
                                              : score_all(h, y[l]));
    energy += estimate_total_energy(h, y[l]);
  }
  energy /= static_cast<double>(hashes.size());
  const double kappa = cfg.threshold < 0.0 ? kDetectionThreshold : cfg.threshold;
  for (const auto* h : hashes) thresholds.push_back(auto_threshold(*h, energy, cfg.k, kappa));

  OneSidedRecovery out;
  std::vector<std::size_t> hard;
  if (cfg.mode == VoteMode::hard) hard = detect_hard(tables, thresholds);
  out.scores = soft_vote(std::move(tables));
  if (cfg.mode == VoteMode::soft) {
    out.indices = recover_top_k(out.scores, std::min(cfg.k, out.scores.n_candidates));
  } else {
    const auto& s = out.scores.log_aggregate;
    std::stable_sort(hard.begin(), hard.end(), [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
    out.indices = std::move(hard);
  }
  return out;
}

TwoSidedRecovery recover_two_sided(std::span<const TwoSidedRound> rounds, const DetectionConfig& cfg) {
  cfg.validate();
  if (rounds.empty()) throw std::invalid_argument("recover_two_sided: need at least one round");
  const std::size_t b = rounds.front().y->rows;
  std::vector<const HashFunction*> rx_hashes, tx_hashes;
  std::vector<std::vector<double>> rx_y, tx_y;
  TwoSidedRecovery out;
  for (const auto& r : rounds) {
    if (r.y->rows != b || r.y->cols != b || r.rx->b_count() != b || r.tx->b_count() != b) {
      throw std::invalid_argument("recover_two_sided: inconsistent B across rounds");
    }
    rx_hashes.push_back(r.rx);
    tx_hashes.push_back(r.tx);
    rx_y.push_back(r.y->row_sums());
    tx_y.push_back(r.y->col_sums());
    out.frames_used += r.y->frames_used;
  }
  auto rx = recover_one_sided(rx_hashes, rx_y, cfg);
  auto tx = recover_one_sided(tx_hashes, tx_y, cfg);
  out.rx = std::move(rx.indices);
  out.tx = std::move(tx.indices);
  out.rx_scores = std::move(rx.scores);
  out.tx_scores = std::move(tx.scores);
  return out;
}

}  // namespace sparsebeam
