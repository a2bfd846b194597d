#pragma once

#include <cstddef>

#include "sparsebeam/pattern.hpp"
#include "sparsebeam/rng.hpp"
#include "sparsebeam/spectrum.hpp"

namespace sparsebeam {

/// Generalized permutation of the direction domain, realized on the antenna
/// side by rearranging phase-shifter weights.
///
///   rho(i) = sigma^{-1} i + a           (mod n)  direction i moves to rho(i)
///   tau(i) = b (i + sigma a)            (mod n)  phase exponent attached to it
///
/// Pattern side (right-multiplication by P'):
///   (a P')_q = a_{sigma (q - b)} omega^{a sigma q}
/// Spectrum side:
///   (P x)_{rho(i)} = x_i omega^{tau(i)}
/// With these conventions (a P') . (F' x) = a . (F' (P x)) holds exactly, not
/// only in magnitude.
class Permutation {
 public:
  /// Throws std::invalid_argument if sigma is not invertible mod n.
  Permutation(std::size_t n, std::size_t sigma, std::size_t a, std::size_t b);

  static Permutation identity(std::size_t n) { return Permutation(n, 1, 0, 0); }

  std::size_t n() const noexcept { return n_; }
  std::size_t sigma() const noexcept { return sigma_; }
  std::size_t sigma_inv() const noexcept { return sigma_inv_; }
  std::size_t a() const noexcept { return a_; }
  std::size_t b() const noexcept { return b_; }

  std::size_t rho(std::size_t i) const;
  std::size_t rho_inverse(std::size_t j) const;
  std::size_t tau(std::size_t i) const;
  bool is_identity() const noexcept { return sigma_ == 1 && a_ == 0 && b_ == 0; }

 private:
  std::size_t n_, sigma_, sigma_inv_, a_, b_;
};

/// Modular inverse of x mod n, or 0 when gcd(x, n) != 1.
std::size_t mod_inverse(std::size_t x, std::size_t n);

/// sigma uniform over the units mod n (rejection sampling), a uniform in
/// [0, n); b uniform in theory mode, 0 otherwise.
Permutation sample_permutation(std::size_t n, Engine& rng, bool theory_mode);

/// Pattern right-multiplied by P'. Entrywise unit modulus is preserved.
PhasePattern apply_to_pattern(const PhasePattern& pattern, const Permutation& perm);

/// The spectrum-side companion: entry i moves to rho(i) with phase omega^{tau(i)}.
DirectionSpectrum permute_spectrum(const Permutation& perm, const DirectionSpectrum& x);

}  // namespace sparsebeam
