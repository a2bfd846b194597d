#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsebeam/fourier.hpp"
#include "sparsebeam/pattern.hpp"
#include "sparsebeam/permute.hpp"
#include "sparsebeam/rng.hpp"

namespace sparsebeam {

/// Beam aimed at grid direction s: the forward Fourier row s scaled to unit
/// modulus, a_m = omega^{-s m}. |a . F'_s|^2 = n.
PhasePattern single_beam(const FourierContext& ctx, std::size_t s);

/// Beam aimed at a continuous spatial frequency (grid units).
PhasePattern steered_beam(const FourierContext& ctx, double freq);

/// Shape of one multi-armed hashing: R arms (sub-beams) per bin, B bins.
///
/// The weight vector is cut into R contiguous segments of length P = n/R;
/// segment r of bin b is steered at s^r_b = R b + r P. Every arm center is a
/// multiple of R and each arm's main lobe spans R grid directions, so the
/// B = n/R^2 bins tile the grid exactly when R^2 divides n.
///
/// For n without such a factorization (prime n in the theory checks) a
/// ragged geometry keeps P = floor(n/R), absorbs the remainder into the last
/// segment and uses B = ceil(P/R) bins; the tiling is then approximate.
struct HashGeometry {
  std::size_t n = 0;
  std::size_t r = 1;        // arms per bin
  std::size_t p = 0;        // segment length and arm spacing
  std::size_t b_count = 0;  // bins
  bool ragged = false;

  /// Exactly B bins. Throws std::invalid_argument unless n/B is a perfect
  /// square R^2 with R^2 dividing n.
  static HashGeometry exact(std::size_t n, std::size_t b_count);
  /// Smallest exact geometry with B >= b_target: R is the largest integer with
  /// R^2 <= n/b_target and R^2 | n, then B = n/R^2.
  static HashGeometry for_sparsity(std::size_t n, std::size_t b_target);
  /// Geometry with R arms for any n (ragged when R^2 does not divide n).
  static HashGeometry with_arms(std::size_t n, std::size_t r);

  std::size_t segment_begin(std::size_t arm) const noexcept { return arm * p; }
  std::size_t segment_end(std::size_t arm) const noexcept { return arm + 1 == r ? n : (arm + 1) * p; }
  /// s^r_b = R b + r P.
  std::size_t arm_direction(std::size_t bin, std::size_t arm) const noexcept {
    return (r * bin + arm * p) % n;
  }
  /// Direction of arm r of bin b when arm r's bins are rotated by rot[r]:
  /// R ((b + rot[r]) mod B) + r P. rot = 0 gives arm_direction.
  std::size_t arm_direction(std::size_t bin, std::size_t arm, std::span<const std::size_t> rot) const {
    const std::size_t shift = rot.empty() ? 0 : rot[arm];
    return arm_direction((bin + shift) % b_count, arm);
  }
  /// Coverage of an ideal arm at its own center: P^2 / n. Scores are divided
  /// by gain()^2 to bring them to unit-energy scale.
  double gain() const noexcept;

  /// Bin whose nominal direction set contains (unpermuted) position i.
  std::size_t nominal_bin(std::size_t i, std::span<const std::size_t> rot = {}) const;
  /// Nominal direction set of a bin: the R grid directions nearest each arm.
  std::vector<std::size_t> nominal_set(std::size_t bin, std::span<const std::size_t> rot = {}) const;
};

struct HashOptions {
  bool randomize_phases = false;      // per-arm phase offsets t_r
  bool randomize_perm = true;         // sigma and a
  bool randomize_perm_phase = false;  // b
  bool rotate_arms = true;            // per-arm bin rotation

  /// t_r = 0, b = 0; sigma and a random; arms rotated.
  ///
  /// Rotation matters when P divides n: every bin then holds i and i + P in
  /// different arms, and units mod n map multiples of P onto multiples of P,
  /// so without rotation no hash can tell i from i + P.
  static constexpr HashOptions practical() { return {false, true, false, true}; }
  /// The analyzed construction: t_r, sigma, a, b random; no rotation.
  static constexpr HashOptions theory() { return {true, true, true, false}; }
};

/// Unpermuted multi-armed pattern of one bin: on segment r the weights are
/// (F_{s^r_b})_m omega^{-t_r}, with F rows at unit modulus.
PhasePattern base_multi_arm_pattern(const FourierContext& ctx, const HashGeometry& g,
                                    std::size_t bin, std::span<const std::size_t> t_row,
                                    std::span<const std::size_t> rot = {});

/// base_multi_arm_pattern composed with the generalized permutation P'.
PhasePattern multi_arm_pattern(const FourierContext& ctx, const HashGeometry& g, std::size_t bin,
                               std::span<const std::size_t> t_row, const Permutation& perm,
                               std::span<const std::size_t> rot = {});

/// I(b, rho, i) = |a^b . F'_{rho(i)}|^2 for an unpermuted pattern a^b.
double coverage(const FourierContext& ctx, const PhasePattern& base, const Permutation& perm,
                std::size_t i);

/// One randomized hashing of the direction grid into B bins.
class HashFunction {
 public:
  HashFunction(const FourierContext& ctx, HashGeometry geometry,
               std::vector<std::vector<std::size_t>> t_phases, Permutation perm,
               std::uint64_t id, std::vector<std::size_t> rotation = {});

  const HashGeometry& geometry() const noexcept { return geometry_; }
  std::size_t n() const noexcept { return geometry_.n; }
  std::size_t b_count() const noexcept { return geometry_.b_count; }
  std::size_t arms() const noexcept { return geometry_.r; }
  const Permutation& perm() const noexcept { return perm_; }
  std::uint64_t id() const noexcept { return id_; }
  std::span<const std::size_t> t_phases(std::size_t bin) const { return t_phases_.at(bin); }
  /// Per-arm bin rotation; empty when arms are not rotated.
  std::span<const std::size_t> rotation() const noexcept { return rotation_; }
  /// Direction of arm r of bin b, rotation included.
  std::size_t arm_direction(std::size_t bin, std::size_t arm) const {
    return geometry_.arm_direction(bin, arm, rotation_);
  }

  /// Physical patterns (already composed with the permutation); one frame each.
  std::span<const PhasePattern> patterns() const noexcept { return patterns_; }
  std::span<const PhasePattern> base_patterns() const noexcept { return base_patterns_; }

  /// I(b, rho, i), precomputed for every bin and direction.
  double coverage(std::size_t bin, std::size_t i) const { return coverage_[bin * n() + i]; }
  std::span<const double> coverage_row(std::size_t bin) const {
    return std::span<const double>(coverage_).subspan(bin * n(), n());
  }
  /// (1/n) sum_i sum_b I(b, rho, i). Equals B for unit-modulus patterns.
  double mean_total_coverage() const noexcept { return mean_total_coverage_; }

 private:
  HashGeometry geometry_;
  std::vector<std::vector<std::size_t>> t_phases_;
  std::vector<std::size_t> rotation_;
  Permutation perm_;
  std::uint64_t id_;
  std::vector<PhasePattern> base_patterns_;
  std::vector<PhasePattern> patterns_;
  std::vector<double> coverage_;  // b-major, B x n
  double mean_total_coverage_ = 0.0;
};

HashFunction build_hash(const FourierContext& ctx, std::size_t b_count, Engine& rng,
                        HashOptions options = HashOptions::practical());
HashFunction build_hash(const FourierContext& ctx, const HashGeometry& geometry, Engine& rng,
                        HashOptions options = HashOptions::practical());

/// Boxcar filter of the analysis layer: P - 1 taps of height sqrt(n)/(P - 1)
/// centered on index 0, so that its unitary spectrum satisfies H^_0 = 1 and
/// |H^_j| = |sin(pi (P-1) j / n) / ((P-1) sin(pi j / n))|.
class BoxcarFilter {
 public:
  BoxcarFilter(const FourierContext& ctx, std::size_t p);

  std::size_t n() const noexcept { return taps_.size(); }
  std::size_t p() const noexcept { return p_; }
  std::span<const cplx> taps() const noexcept { return taps_; }
  /// H^ = F H (unitary), computed by transform.
  std::span<const cplx> spectrum() const noexcept { return spectrum_; }
  /// H^_j with the half-tap centering phase of odd P removed (real for all P).
  double centered(std::size_t j) const;
  /// Closed-form Dirichlet value at signed frequency j.
  double closed_form(long long j) const;
  /// Taps circularly shifted by t: (H^t)_i = H_{i - t}.
  CVec shifted_taps(std::size_t t) const;

 private:
  std::size_t p_;
  double center_;  // 0 for even P, 1/2 for odd P
  CVec taps_;
  CVec spectrum_;
};

/// Throws std::out_of_range unless 3 <= p <= n/2.
BoxcarFilter boxcar(const FourierContext& ctx, std::size_t p);

/// Signed representative of j in (-n/2, n/2].
long long signed_index(std::size_t j, std::size_t n);

}  // namespace sparsebeam
