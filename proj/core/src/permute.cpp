#include "sparsebeam/permute.hpp"

#include <numeric>
#include <stdexcept>

namespace sparsebeam {

namespace {

__extension__ using u128 = unsigned __int128;

std::size_t mulmod(std::size_t x, std::size_t y, std::size_t n) {
  return static_cast<std::size_t>((static_cast<u128>(x) * y) % n);
}

}  // namespace

std::size_t mod_inverse(std::size_t x, std::size_t n) {
  if (n == 1) return 0;
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(n), new_r = static_cast<long long>(x % n);
  while (new_r != 0) {
    const long long q = r / new_r;
    t = t - q * new_t;
    std::swap(t, new_t);
    r = r - q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) return 0;
  if (t < 0) t += static_cast<long long>(n);
  return static_cast<std::size_t>(t);
}

Permutation::Permutation(std::size_t n, std::size_t sigma, std::size_t a, std::size_t b)
    : n_(n), sigma_(sigma % (n == 0 ? 1 : n)), a_(a), b_(b) {
  if (n < 1) throw std::invalid_argument("Permutation: n must be positive");
  if (a >= n || b >= n) throw std::out_of_range("Permutation: a and b must lie in [0, n)");
  sigma_inv_ = n == 1 ? 0 : mod_inverse(sigma_, n);
  if (n > 1 && sigma_inv_ == 0) {
    throw std::invalid_argument("Permutation: sigma is not invertible mod n");
  }
}

std::size_t Permutation::rho(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("Permutation::rho: index out of range");
  return (mulmod(sigma_inv_, i, n_) + a_) % n_;
}

std::size_t Permutation::rho_inverse(std::size_t j) const {
  if (j >= n_) throw std::out_of_range("Permutation::rho_inverse: index out of range");
  return mulmod(sigma_, (j + n_ - a_) % n_, n_);
}

std::size_t Permutation::tau(std::size_t i) const {
  return mulmod(b_, (i + mulmod(sigma_, a_, n_)) % n_, n_);
}

Permutation sample_permutation(std::size_t n, Engine& rng, bool theory_mode) {
  if (n < 2) throw std::invalid_argument("sample_permutation: n must be at least 2");
  std::uniform_int_distribution<std::size_t> unit(1, n - 1);
  std::uniform_int_distribution<std::size_t> any(0, n - 1);
  std::size_t sigma = unit(rng);
  while (std::gcd(sigma, n) != 1) sigma = unit(rng);
  const std::size_t a = any(rng);
  const std::size_t b = theory_mode ? any(rng) : 0;
  return Permutation(n, sigma, a, b);
}

PhasePattern apply_to_pattern(const PhasePattern& pattern, const Permutation& perm) {
  const std::size_t n = perm.n();
  if (pattern.n() != n) throw std::invalid_argument("apply_to_pattern: size mismatch");
  if (perm.is_identity()) return pattern;
  FourierContext ctx(n);
  const std::size_t a_sigma = mulmod(perm.a(), perm.sigma(), n);
  CVec out(n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t src = mulmod(perm.sigma(), (q + n - perm.b()) % n, n);
    out[q] = pattern[src] * ctx.omega_pow(static_cast<long long>(mulmod(a_sigma, q, n)));
  }
  return PhasePattern(std::move(out));
}

DirectionSpectrum permute_spectrum(const Permutation& perm, const DirectionSpectrum& x) {
  if (x.n() != perm.n()) throw std::invalid_argument("permute_spectrum: size mismatch");
  FourierContext ctx(perm.n());
  std::vector<SpectrumEntry> out;
  out.reserve(x.sparsity());
  for (const auto& e : x.entries()) {
    out.push_back({perm.rho(e.index),
                   e.amplitude * ctx.omega_pow(static_cast<long long>(perm.tau(e.index)))});
  }
  return DirectionSpectrum(perm.n(), std::move(out));
}

}  // namespace sparsebeam
