#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sparsebeam/beams.hpp"
#include "sparsebeam/measure.hpp"

namespace sparsebeam {

/// Worst-case detection threshold for unit-energy K-sparse signals built from
/// the boxcar lobe bounds: (1/(4 pi) - 1/(8 pi))^2 (1/(4 pi))^2 / K, i.e.
/// 1/(1024 pi^4 K). Kept for reference; it sits below the side-lobe leakage
/// floor of every practical geometry and so never rejects.
inline constexpr double kClosedFormThreshold = 1.0 / (1024.0 * 3.14159265358979323846 *
                                                       3.14159265358979323846 *
                                                       3.14159265358979323846 *
                                                       3.14159265358979323846);

/// Pinned normalized threshold kappa: a direction is detected in one hash when
/// T(i) / g^2 >= kappa * E / K, where g is the arm gain and E the estimated
/// signal energy. kappa = (1/2) (2/pi)^4, the squared worst-case main-lobe
/// gain of a boxcar arm, halved.
inline constexpr double kDetectionThreshold =
    0.5 * (16.0 / (3.14159265358979323846 * 3.14159265358979323846 * 3.14159265358979323846 *
                   3.14159265358979323846));

enum class VoteMode { hard, soft };

struct DetectionConfig {
  std::size_t k = 1;
  std::size_t b_count = 0;  // 0: default_b_count(n, k)
  std::size_t l_hashes = 0; // 0: ceil(log2 n)
  /// Normalized threshold (multiplies E/K); negative selects kDetectionThreshold.
  double threshold = -1.0;
  VoteMode mode = VoteMode::soft;
  std::size_t fine_grid_factor = 1;

  void validate() const;
};

/// Smallest feasible B with B >= max(4, 2K).
std::size_t default_b_count(std::size_t n, std::size_t k);
/// ceil(log2 n).
std::size_t default_l_hashes(std::size_t n);

/// Per-hash scores T_l(i) over a candidate grid, plus their soft-vote aggregate.
struct ScoreTable {
  std::size_t n_candidates = 0;
  std::vector<std::vector<double>> per_hash;  // L x n_candidates
  std::vector<double> log_aggregate;          // S(i) in log domain
};

/// T(i, rho) = sum_b y_b^2 I(b, rho, i).
double score(const HashFunction& hash, std::span<const double> y, std::size_t i);
double score(const HashFunction& hash, const MeasurementSet& ms, std::size_t i);
/// Scores of every grid direction.
std::vector<double> score_all(const HashFunction& hash, std::span<const double> y);
std::vector<double> score_all(const HashFunction& hash, const MeasurementSet& ms);

/// Energy estimate of direction i: T(i, rho) / g^2.
double estimate_energy(const HashFunction& hash, const MeasurementSet& ms, std::size_t i);

/// Signal energy estimate: sum_b y_b^2 over the hash's mean total coverage.
double estimate_total_energy(const HashFunction& hash, std::span<const double> y);

/// Threshold on raw T for one hash: kappa * E * g^2 / K.
double auto_threshold(const HashFunction& hash, double energy, std::size_t k,
                      double kappa = kDetectionThreshold);

/// Indices detected by a strict majority of the L tables.
std::vector<std::size_t> detect_hard(const std::vector<std::vector<double>>& tables,
                                     std::span<const double> thresholds);
std::vector<std::size_t> detect_hard(const std::vector<std::vector<double>>& tables,
                                     double threshold);

/// S(i) = sum_l log max(T_l(i), eps_l), eps_l = 1e-3 x median positive T_l.
ScoreTable soft_vote(std::vector<std::vector<double>> tables);

/// k largest entries, ties to the lowest index.
std::vector<std::size_t> recover_top_k(std::span<const double> aggregate, std::size_t k);
std::vector<std::size_t> recover_top_k(const ScoreTable& table, std::size_t k);

/// One-sided pipeline over L hashes: score each hash, then either take the
/// top k of the soft vote or the hard-majority detections (ordered by S).
struct OneSidedRecovery {
  std::vector<std::size_t> indices;
  ScoreTable scores;
};
OneSidedRecovery recover_one_sided(std::span<const HashFunction* const> hashes,
                                   std::span<const std::vector<double>> y, const DetectionConfig& cfg);

/// One round of a two-sided run: the hash pair and its B x B measurements.
struct TwoSidedRound {
  const HashFunction* rx;
  const HashFunction* tx;
  const MeasurementSet* y;
};

struct TwoSidedRecovery {
  std::vector<std::size_t> rx;
  std::vector<std::size_t> tx;
  ScoreTable rx_scores;
  ScoreTable tx_scores;
  std::uint64_t frames_used = 0;
};

/// Row sums feed the receive side, column sums the transmit side; each side
/// then runs the one-sided voting pipeline.
TwoSidedRecovery recover_two_sided(std::span<const TwoSidedRound> rounds, const DetectionConfig& cfg);

/// Scores over n * factor candidate frequencies c / factor using the physical
/// (permuted) patterns. At factor 1 this equals score_all.
std::vector<double> fine_grid_score(const HashFunction& hash, std::span<const double> y,
                                    std::size_t factor);
ScoreTable fine_grid_score(std::span<const HashFunction> hashes,
                           std::span<const MeasurementSet> measurements, std::size_t factor);

}  // namespace sparsebeam
