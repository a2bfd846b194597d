#include "sparsebeam/beams.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sparsebeam {

PhasePattern single_beam(const FourierContext& ctx, std::size_t s) {
  if (s >= ctx.n()) throw std::out_of_range("single_beam: direction index out of range");
  CVec w(ctx.n());
  for (std::size_t m = 0; m < ctx.n(); ++m) {
    w[m] = ctx.omega_pow(-static_cast<long long>((s * m) % ctx.n()));
  }
  return PhasePattern(std::move(w));
}

PhasePattern steered_beam(const FourierContext& ctx, double freq) {
  CVec w(ctx.n());
  const double step = -2.0 * kPi * freq / static_cast<double>(ctx.n());
  for (std::size_t m = 0; m < ctx.n(); ++m) w[m] = std::polar(1.0, step * static_cast<double>(m));
  return PhasePattern(std::move(w));
}

// ---------------------------------------------------------------------------
// Geometry

HashGeometry HashGeometry::exact(std::size_t n, std::size_t b_count) {
  if (b_count == 0 || n % b_count != 0) {
    throw std::invalid_argument("HashGeometry: bin count must divide n");
  }
  const std::size_t q = n / b_count;
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(q))));
  if (r * r != q) throw std::invalid_argument("HashGeometry: n / B must be a perfect square");
  return HashGeometry{n, r, n / r, b_count, false};
}

HashGeometry HashGeometry::for_sparsity(std::size_t n, std::size_t b_target) {
  if (n == 0 || b_target == 0) throw std::invalid_argument("HashGeometry: n and B must be positive");
  std::size_t best = 1;
  for (std::size_t r = 1; r * r * std::max<std::size_t>(b_target, 1) <= n; ++r) {
    if (n % (r * r) == 0) best = r;
  }
  return HashGeometry{n, best, n / best, n / (best * best), false};
}

HashGeometry HashGeometry::with_arms(std::size_t n, std::size_t r) {
  if (r == 0 || r * r > n) throw std::invalid_argument("HashGeometry: need 1 <= R and R^2 <= n");
  const std::size_t p = n / r;
  const std::size_t b = (p + r - 1) / r;
  const bool ragged = (n % (r * r)) != 0;
  return HashGeometry{n, r, p, b, ragged};
}

double HashGeometry::gain() const noexcept {
  return static_cast<double>(p) * static_cast<double>(p) / static_cast<double>(n);
}

std::size_t HashGeometry::nominal_bin(std::size_t i, std::span<const std::size_t> rot) const {
  if (i >= n) throw std::out_of_range("HashGeometry::nominal_bin: index out of range");
  if (!rot.empty() && rot.size() != r) throw std::invalid_argument("nominal_bin: one rotation per arm");
  if (!ragged) {
    const std::size_t centers = n / r;
    const std::size_t k = ((i + r / 2) / r) % centers;  // center index k = b + arm B
    const std::size_t arm = k / b_count;
    const std::size_t shift = rot.empty() ? 0 : rot[arm] % b_count;
    return (k % b_count + b_count - shift) % b_count;
  }
  std::size_t best_bin = 0;
  double best = static_cast<double>(n);
  for (std::size_t b = 0; b < b_count; ++b) {
    for (std::size_t arm = 0; arm < r; ++arm) {
      const double d = circular_distance(static_cast<double>(arm_direction(b, arm, rot)),
                                         static_cast<double>(i), n);
      if (d < best) {
        best = d;
        best_bin = b;
      }
    }
  }
  return best_bin;
}

std::vector<std::size_t> HashGeometry::nominal_set(std::size_t bin, std::span<const std::size_t> rot) const {
  if (bin >= b_count) throw std::out_of_range("HashGeometry::nominal_set: bin out of range");
  if (!rot.empty() && rot.size() != r) throw std::invalid_argument("nominal_set: one rotation per arm");
  std::vector<std::size_t> out;
  if (!ragged) {
    const auto half = static_cast<long long>(r / 2);
    for (std::size_t arm = 0; arm < r; ++arm) {
      const auto center = static_cast<long long>(arm_direction(bin, arm, rot));
      for (long long d = -half; d < static_cast<long long>(r) - half; ++d) {
        long long i = (center + d) % static_cast<long long>(n);
        if (i < 0) i += static_cast<long long>(n);
        out.push_back(static_cast<std::size_t>(i));
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (nominal_bin(i, rot) == bin) out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Patterns

PhasePattern base_multi_arm_pattern(const FourierContext& ctx, const HashGeometry& g,
                                    std::size_t bin, std::span<const std::size_t> t_row,
                                    std::span<const std::size_t> rot) {
  if (g.n != ctx.n()) throw std::invalid_argument("multi_arm_pattern: size mismatch");
  if (g.p == 0 || g.r * g.p > g.n) throw std::invalid_argument("multi_arm_pattern: bad geometry");
  if (bin >= g.b_count) throw std::out_of_range("multi_arm_pattern: bin out of range");
  if (t_row.size() != g.r) throw std::invalid_argument("multi_arm_pattern: need one phase per arm");
  if (!rot.empty() && rot.size() != g.r) throw std::invalid_argument("multi_arm_pattern: need one rotation per arm");
  const std::size_t n = g.n;
  CVec w(n);
  for (std::size_t arm = 0; arm < g.r; ++arm) {
    const std::size_t s = g.arm_direction(bin, arm, rot);
    for (std::size_t m = g.segment_begin(arm); m < g.segment_end(arm); ++m) {
      const auto exponent = static_cast<long long>((s * m) % n) + static_cast<long long>(t_row[arm]);
      w[m] = ctx.omega_pow(-exponent);
    }
  }
  return PhasePattern(std::move(w));
}

PhasePattern multi_arm_pattern(const FourierContext& ctx, const HashGeometry& g, std::size_t bin,
                               std::span<const std::size_t> t_row, const Permutation& perm,
                               std::span<const std::size_t> rot) {
  return apply_to_pattern(base_multi_arm_pattern(ctx, g, bin, t_row, rot), perm);
}

double coverage(const FourierContext& ctx, const PhasePattern& base, const Permutation& perm,
                std::size_t i) {
  if (base.n() != ctx.n() || perm.n() != ctx.n()) {
    throw std::invalid_argument("coverage: size mismatch");
  }
  const CVec col = ctx.steering_column(perm.rho(i));
  return std::norm(base.apply(col));
}

// ---------------------------------------------------------------------------
// HashFunction

HashFunction::HashFunction(const FourierContext& ctx, HashGeometry geometry,
                           std::vector<std::vector<std::size_t>> t_phases, Permutation perm,
                           std::uint64_t id, std::vector<std::size_t> rotation)
    : geometry_(geometry),
      t_phases_(std::move(t_phases)),
      rotation_(std::move(rotation)),
      perm_(std::move(perm)),
      id_(id) {
  const std::size_t n = geometry_.n;
  if (ctx.n() != n || perm_.n() != n) throw std::invalid_argument("HashFunction: size mismatch");
  if (t_phases_.size() != geometry_.b_count) {
    throw std::invalid_argument("HashFunction: need one phase row per bin");
  }
  if (!rotation_.empty() && rotation_.size() != geometry_.r) {
    throw std::invalid_argument("HashFunction: need one rotation per arm");
  }
  base_patterns_.reserve(geometry_.b_count);
  patterns_.reserve(geometry_.b_count);
  coverage_.resize(geometry_.b_count * n);
  double total = 0.0;
  for (std::size_t b = 0; b < geometry_.b_count; ++b) {
    base_patterns_.push_back(base_multi_arm_pattern(ctx, geometry_, b, t_phases_[b], rotation_));
    patterns_.push_back(apply_to_pattern(base_patterns_.back(), perm_));
    // F' applied to the weights gives a . F'_p for every p at once (F' is symmetric).
    const CVec response = ctx.inverse(base_patterns_.back().weights());
    for (std::size_t i = 0; i < n; ++i) {
      const double c = std::norm(response[perm_.rho(i)]);
      coverage_[b * n + i] = c;
      total += c;
    }
  }
  mean_total_coverage_ = total / static_cast<double>(n);
}

HashFunction build_hash(const FourierContext& ctx, std::size_t b_count, Engine& rng,
                        HashOptions options) {
  return build_hash(ctx, HashGeometry::exact(ctx.n(), b_count), rng, options);
}

HashFunction build_hash(const FourierContext& ctx, const HashGeometry& geometry, Engine& rng,
                        HashOptions options) {
  const std::size_t n = ctx.n();
  if (geometry.n != n) throw std::invalid_argument("build_hash: geometry size mismatch");
  Permutation perm = Permutation::identity(n);
  if (options.randomize_perm) {
    perm = sample_permutation(n, rng, options.randomize_perm_phase);
  } else if (options.randomize_perm_phase) {
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    perm = Permutation(n, 1, 0, any(rng));
  }
  std::vector<std::vector<std::size_t>> t(geometry.b_count, std::vector<std::size_t>(geometry.r, 0));
  if (options.randomize_phases) {
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    for (auto& row : t) {
      for (auto& v : row) v = any(rng);
    }
  }
  std::vector<std::size_t> rot;
  if (options.rotate_arms && geometry.r > 1 && geometry.b_count > 1) {
    std::uniform_int_distribution<std::size_t> shift(0, geometry.b_count - 1);
    rot.resize(geometry.r);
    for (auto& v : rot) v = shift(rng);
  }
  const std::uint64_t id = rng();
  return HashFunction(ctx, geometry, std::move(t), std::move(perm), id, std::move(rot));
}

// ---------------------------------------------------------------------------
// Boxcar

long long signed_index(std::size_t j, std::size_t n) {
  const auto jj = static_cast<long long>(j % n);
  const auto nn = static_cast<long long>(n);
  return 2 * jj > nn ? jj - nn : jj;
}

BoxcarFilter::BoxcarFilter(const FourierContext& ctx, std::size_t p) : p_(p) {
  const std::size_t n = ctx.n();
  if (p < 3 || 2 * p > n) throw std::out_of_range("boxcar: need 3 <= P <= n/2");
  const double height = std::sqrt(static_cast<double>(n)) / static_cast<double>(p - 1);
  const long long first = -static_cast<long long>((p - 2) / 2);
  center_ = (p % 2 == 0) ? 0.0 : 0.5;
  taps_.assign(n, cplx{0.0, 0.0});
  for (long long k = 0; k < static_cast<long long>(p - 1); ++k) {
    long long idx = (first + k) % static_cast<long long>(n);
    if (idx < 0) idx += static_cast<long long>(n);
    taps_[static_cast<std::size_t>(idx)] = height;
  }
  spectrum_ = ctx.forward(taps_);
}

double BoxcarFilter::centered(std::size_t j) const {
  const std::size_t n = taps_.size();
  const double js = static_cast<double>(signed_index(j, n));
  const cplx undo = std::polar(1.0, 2.0 * kPi * js * center_ / static_cast<double>(n));
  return (spectrum_[j % n] * undo).real();
}

double BoxcarFilter::closed_form(long long j) const {
  const auto n = static_cast<double>(taps_.size());
  const auto w = static_cast<double>(p_ - 1);
  if (j % static_cast<long long>(taps_.size()) == 0) return 1.0;
  const double x = kPi * static_cast<double>(j) / n;
  return std::sin(w * x) / (w * std::sin(x));
}

CVec BoxcarFilter::shifted_taps(std::size_t t) const {
  const std::size_t n = taps_.size();
  CVec out(n);
  for (std::size_t i = 0; i < n; ++i) out[(i + t) % n] = taps_[i];
  return out;
}

BoxcarFilter boxcar(const FourierContext& ctx, std::size_t p) { return BoxcarFilter(ctx, p); }

}  // namespace sparsebeam
