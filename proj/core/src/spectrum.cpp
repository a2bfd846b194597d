#include "sparsebeam/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace sparsebeam {

namespace {

bool is_integer(double f) { return std::abs(f - std::round(f)) < 1e-12; }

std::size_t grid_index(double freq, std::size_t n) {
  long long p = std::llround(freq) % static_cast<long long>(n);
  if (p < 0) p += static_cast<long long>(n);
  return static_cast<std::size_t>(p);
}

// <v(a), v(b)> = (1/n) sum_m e^{2 pi j m (b - a) / n}
cplx steering_inner(double a, double b, std::size_t n) {
  const double delta = 2.0 * kPi * (b - a) / static_cast<double>(n);
  cplx acc{0.0, 0.0};
  for (std::size_t m = 0; m < n; ++m) acc += std::polar(1.0, delta * static_cast<double>(m));
  return acc / static_cast<double>(n);
}

DirectionSpectrum side_spectrum(std::size_t n, std::span<const Path> paths, bool rx) {
  std::map<std::size_t, cplx> acc;
  for (const auto& p : paths) {
    const double f = rx ? p.rx_freq : p.tx_freq;
    if (!is_integer(f)) throw std::logic_error("direction spectrum requires on-grid paths");
    acc[grid_index(f, n)] += p.gain;
  }
  std::vector<SpectrumEntry> entries;
  for (const auto& [idx, amp] : acc) {
    if (std::abs(amp) > 0.0) entries.push_back({idx, amp});
  }
  return DirectionSpectrum(n, std::move(entries));
}

}  // namespace

DirectionSpectrum::DirectionSpectrum(std::size_t n, std::vector<SpectrumEntry> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0) throw std::invalid_argument("DirectionSpectrum: n must be positive");
  std::sort(entries_.begin(), entries_.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].index >= n_) throw std::out_of_range("DirectionSpectrum: index out of range");
    if (i > 0 && entries_[i].index == entries_[i - 1].index) {
      throw std::invalid_argument("DirectionSpectrum: duplicate direction index");
    }
  }
}

DirectionSpectrum DirectionSpectrum::from_dense(std::span<const cplx> dense) {
  std::vector<SpectrumEntry> entries;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != cplx{0.0, 0.0}) entries.push_back({i, dense[i]});
  }
  return DirectionSpectrum(dense.size(), std::move(entries));
}

std::vector<std::size_t> DirectionSpectrum::support() const {
  std::vector<std::size_t> s;
  s.reserve(entries_.size());
  for (const auto& e : entries_) s.push_back(e.index);
  return s;
}

double DirectionSpectrum::energy() const noexcept {
  double e = 0.0;
  for (const auto& entry : entries_) e += std::norm(entry.amplitude);
  return e;
}

DirectionSpectrum DirectionSpectrum::normalized() const {
  const double e = energy();
  if (e <= 0.0) throw std::invalid_argument("DirectionSpectrum: cannot normalize the zero vector");
  const double s = 1.0 / std::sqrt(e);
  auto entries = entries_;
  for (auto& entry : entries) entry.amplitude *= s;
  return DirectionSpectrum(n_, std::move(entries));
}

CVec DirectionSpectrum::dense() const {
  CVec d(n_, cplx{0.0, 0.0});
  for (const auto& e : entries_) d[e.index] = e.amplitude;
  return d;
}

ChannelInstance::ChannelInstance(std::size_t n, std::vector<Path> paths, bool two_sided,
                                 double snr_db, std::uint64_t seed)
    : n_(n), paths_(std::move(paths)), two_sided_(two_sided), snr_db_(snr_db), seed_(seed) {
  if (n == 0) throw std::invalid_argument("ChannelInstance: n must be positive");
  const double nd = static_cast<double>(n);
  for (auto& p : paths_) {
    p.rx_freq = std::fmod(p.rx_freq, nd);
    if (p.rx_freq < 0) p.rx_freq += nd;
    p.tx_freq = std::fmod(p.tx_freq, nd);
    if (p.tx_freq < 0) p.tx_freq += nd;
  }
}

bool ChannelInstance::on_grid() const noexcept {
  return std::all_of(paths_.begin(), paths_.end(), [&](const Path& p) {
    return is_integer(p.rx_freq) && (!two_sided_ || is_integer(p.tx_freq));
  });
}

CVec ChannelInstance::rx_antenna() const {
  FourierContext ctx(n_);
  CVec h(n_, cplx{0.0, 0.0});
  for (const auto& p : paths_) {
    const CVec v = ctx.steering_at(p.rx_freq);
    for (std::size_t m = 0; m < n_; ++m) h[m] += p.gain * v[m];
  }
  return h;
}

DirectionSpectrum ChannelInstance::rx_spectrum() const { return side_spectrum(n_, paths_, true); }

DirectionSpectrum ChannelInstance::tx_spectrum() const {
  if (!two_sided_) throw std::logic_error("tx_spectrum: channel is one-sided");
  return side_spectrum(n_, paths_, false);
}

CVec ChannelInstance::rx_grid_projection() const {
  FourierContext ctx(n_);
  const CVec h = rx_antenna();
  return ctx.forward(h);
}

double ChannelInstance::reference_power() const {
  double total = 0.0;
  for (std::size_t k = 0; k < paths_.size(); ++k) {
    for (std::size_t l = 0; l < paths_.size(); ++l) {
      cplx term = paths_[k].gain * std::conj(paths_[l].gain) *
                  steering_inner(paths_[l].rx_freq, paths_[k].rx_freq, n_);
      if (two_sided_) term *= steering_inner(paths_[l].tx_freq, paths_[k].tx_freq, n_);
      total += term.real();
    }
  }
  return std::max(total, 0.0);
}

double ChannelInstance::noise_variance() const {
  if (std::isinf(snr_db_) && snr_db_ > 0) return 0.0;
  return reference_power() / std::pow(10.0, snr_db_ / 10.0);
}

ChannelInstance ChannelInstance::with_snr(double snr_db) const {
  ChannelInstance c = *this;
  c.snr_db_ = snr_db;
  return c;
}

ChannelInstance ChannelInstance::with_seed(std::uint64_t seed) const {
  ChannelInstance c = *this;
  c.seed_ = seed;
  return c;
}

namespace {

ChannelInstance finish_channel(std::size_t n, std::vector<Path> paths, double snr_db,
                               std::uint64_t seed, const ChannelOptions& opts) {
  if (paths.empty() || paths.size() > n / 4) {
    throw std::invalid_argument("make_channel: number of paths must lie in [1, n/4]");
  }
  std::set<std::pair<std::size_t, std::size_t>> cells;
  for (const auto& p : paths) {
    const auto cell = std::make_pair(grid_index(p.rx_freq, n),
                                     opts.two_sided ? grid_index(p.tx_freq, n) : 0);
    if (!cells.insert(cell).second) {
      throw std::invalid_argument("make_channel: duplicate direction indices");
    }
  }
  ChannelInstance ch(n, std::move(paths), opts.two_sided, snr_db, seed);
  if (!opts.normalize) return ch;
  const double power = ch.reference_power();
  if (power <= 0.0) throw std::invalid_argument("make_channel: cannot normalize a zero channel");
  std::vector<Path> scaled(ch.paths().begin(), ch.paths().end());
  for (auto& p : scaled) p.gain /= std::sqrt(power);
  return ChannelInstance(n, std::move(scaled), opts.two_sided, snr_db, seed);
}

}  // namespace

ChannelInstance make_channel(std::size_t n, std::span<const PathPair> paths, double snr_db,
                             std::uint64_t seed, ChannelOptions opts) {
  std::vector<Path> ps;
  ps.reserve(paths.size());
  for (const auto& pp : paths) {
    if (!(pp.rx.angle_deg > 0.0 && pp.rx.angle_deg < 180.0) ||
        !(pp.tx.angle_deg > 0.0 && pp.tx.angle_deg < 180.0)) {
      throw std::out_of_range("make_channel: angles must lie in (0, 180) degrees");
    }
    ps.push_back({freq_of_angle(n, pp.rx.angle_deg), freq_of_angle(n, pp.tx.angle_deg),
                  pp.rx.gain * pp.tx.gain});
  }
  return finish_channel(n, std::move(ps), snr_db, seed, opts);
}

ChannelInstance make_channel(std::size_t n, std::span<const PathSpec> paths, double snr_db,
                             std::uint64_t seed, ChannelOptions opts) {
  std::vector<Path> ps;
  ps.reserve(paths.size());
  for (const auto& p : paths) {
    if (!(p.angle_deg > 0.0 && p.angle_deg < 180.0)) {
      throw std::out_of_range("make_channel: angles must lie in (0, 180) degrees");
    }
    ps.push_back({freq_of_angle(n, p.angle_deg), 0.0, p.gain});
  }
  opts.two_sided = false;
  return finish_channel(n, std::move(ps), snr_db, seed, opts);
}

ChannelInstance make_grid_channel(std::size_t n, std::span<const GridPath> paths, double snr_db,
                                  std::uint64_t seed, ChannelOptions opts) {
  std::vector<Path> ps;
  ps.reserve(paths.size());
  for (const auto& p : paths) {
    if (p.rx >= n || p.tx >= n) throw std::out_of_range("make_grid_channel: index out of range");
    ps.push_back({static_cast<double>(p.rx), static_cast<double>(p.tx), p.gain});
  }
  return finish_channel(n, std::move(ps), snr_db, seed, opts);
}

ChannelInstance make_one_sided_channel(const DirectionSpectrum& x, double snr_db,
                                       std::uint64_t seed) {
  std::vector<Path> ps;
  for (const auto& e : x.entries()) ps.push_back({static_cast<double>(e.index), 0.0, e.amplitude});
  return ChannelInstance(x.n(), std::move(ps), false, snr_db, seed);
}

ChannelInstance make_separable_channel(const DirectionSpectrum& x_rx, const DirectionSpectrum& x_tx,
                                       double snr_db, std::uint64_t seed) {
  if (x_rx.n() != x_tx.n()) throw std::invalid_argument("make_separable_channel: size mismatch");
  std::vector<Path> ps;
  for (const auto& r : x_rx.entries()) {
    for (const auto& t : x_tx.entries()) {
      ps.push_back({static_cast<double>(r.index), static_cast<double>(t.index),
                    r.amplitude * t.amplitude});
    }
  }
  return ChannelInstance(x_rx.n(), std::move(ps), true, snr_db, seed);
}

DirectionSpectrum sample_sparse_spectrum(std::size_t n, std::size_t k, Engine& rng,
                                         bool equal_energy, std::size_t min_separation) {
  if (k == 0 || k > n) throw std::invalid_argument("sample_sparse_spectrum: need 1 <= k <= n");
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<std::size_t> support;
  for (int attempt = 0; support.size() < k; ++attempt) {
    if (attempt > 100000) throw std::invalid_argument("sample_sparse_spectrum: separation infeasible");
    const std::size_t c = pick(rng);
    const bool ok = std::all_of(support.begin(), support.end(), [&](std::size_t s) {
      return circular_distance(static_cast<double>(s), static_cast<double>(c), n) >=
             static_cast<double>(std::max<std::size_t>(min_separation, 1));
    });
    if (ok) support.push_back(c);
  }
  std::vector<SpectrumEntry> entries;
  for (std::size_t s : support) {
    double mag = 1.0;
    if (!equal_energy) {
      const double re = normal(rng), im = normal(rng);
      mag = std::hypot(re, im);
    }
    entries.push_back({s, std::polar(mag, phase(rng))});
  }
  return DirectionSpectrum(n, std::move(entries)).normalized();
}

}  // namespace sparsebeam
