#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <sparsebeam/beams.hpp>

namespace sbeam {

/// Arms per bin used for the single-hash detection experiments:
/// R = 4 for K <= 2 and R = 2 for larger K.
std::size_t pinned_arms(std::size_t k);

struct DetectionTrial {
  bool detected;  // a random in-support direction passed the threshold
  bool rejected;  // a random off-support direction stayed below it
};

struct DetectionRates {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  bool theory_mode = false;
  sparsebeam::HashGeometry geometry;
  double detection = 0.0;
  double rejection = 0.0;
};

/// Single-hash detection experiment on equal-energy K-sparse one-sided
/// signals. Every trial draws a fresh spectrum and hash and thresholds the
/// score at kappa_scale * kDetectionThreshold * E g^2 / K, with E estimated
/// from the measurements. Ragged geometries (R^2 not dividing n) use theory
/// mode, the others practical mode.
DetectionRates detection_rates(std::size_t n, std::size_t k, std::size_t trials, std::uint64_t seed,
                           double kappa_scale = 1.0, std::vector<DetectionTrial>* per_trial = nullptr);

struct VerifyOptions {
  std::uint64_t seed = 20160101;
  /// Fraction of the full Monte Carlo trial count (10^4 per configuration).
  double trial_fraction = 1.0;
  /// Multiplies the detection threshold; 1 is the pinned value.
  double threshold_scale = 1.0;
};

struct PropertyResult {
  std::string name;
  double measured;
  double bound;
  bool pass;
};

/// Tolerance on Monte Carlo rates for a given trial count: 0.02 at 10^4
/// trials, widened as 2 / sqrt(trials) below that.
double rate_tolerance(std::size_t trials);

std::vector<PropertyResult> verify_boxcar();
std::vector<PropertyResult> verify_permutation(std::uint64_t seed);
std::vector<PropertyResult> verify_factorization(std::uint64_t seed);
std::vector<PropertyResult> verify_detection(const VerifyOptions& opts);

/// Runs every suite, prints one line per property and returns true iff all pass.
bool run_verify(std::ostream& out, const VerifyOptions& opts);

}  // namespace sbeam
