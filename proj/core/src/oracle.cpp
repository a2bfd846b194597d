#include "sparsebeam/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sparsebeam::oracle {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Antenna-domain array manifold of each path, written out long-hand.
std::vector<std::vector<cplx>> manifolds(const ChannelInstance& ch, bool rx) {
  const std::size_t n = ch.n();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::vector<cplx>> out;
  for (const auto& p : ch.paths()) {
    const double f = rx ? p.rx_freq : p.tx_freq;
    std::vector<cplx> v(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double ph = kTwoPi * f * static_cast<double>(m) / static_cast<double>(n);
      v[m] = cplx{std::cos(ph) * scale, std::sin(ph) * scale};
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Beam s: weights e^{-2 pi j s m / n}. Returns beam . manifold for each path and beam.
std::vector<std::vector<cplx>> beam_table(const std::vector<std::vector<cplx>>& man, std::size_t n) {
  std::vector<std::vector<cplx>> t(n, std::vector<cplx>(man.size()));
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < man.size(); ++k) {
      cplx acc{0.0, 0.0};
      for (std::size_t m = 0; m < n; ++m) {
        const double ph = -kTwoPi * static_cast<double>((s * m) % n) / static_cast<double>(n);
        acc += cplx{std::cos(ph), std::sin(ph)} * man[k][m];
      }
      t[s][k] = acc;
    }
  }
  return t;
}

std::vector<std::size_t> argsort_desc(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

}  // namespace

DensePowerMap dense_power_map(const ChannelInstance& ch) {
  const std::size_t n = ch.n();
  const auto paths = ch.paths();
  const auto rx = beam_table(manifolds(ch, true), n);
  DensePowerMap map;
  map.n = n;
  map.two_sided = ch.two_sided();
  if (!ch.two_sided()) {
    map.power.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      cplx z{0.0, 0.0};
      for (std::size_t k = 0; k < paths.size(); ++k) z += paths[k].gain * rx[s][k];
      map.power[s] = std::norm(z);
    }
    return map;
  }
  const auto tx = beam_table(manifolds(ch, false), n);
  map.power.resize(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t t = 0; t < n; ++t) {
      cplx z{0.0, 0.0};
      for (std::size_t k = 0; k < paths.size(); ++k) z += paths[k].gain * rx[r][k] * tx[t][k];
      map.power[r * n + t] = std::norm(z);
    }
  }
  return map;
}

std::vector<double> rx_power_map(const ChannelInstance& ch) {
  const std::size_t n = ch.n();
  const auto paths = ch.paths();
  const auto rx = beam_table(manifolds(ch, true), n);
  std::vector<double> out(n);
  for (std::size_t s = 0; s < n; ++s) {
    cplx z{0.0, 0.0};
    for (std::size_t k = 0; k < paths.size(); ++k) z += paths[k].gain * rx[s][k];
    out[s] = std::norm(z);
  }
  return out;
}

std::vector<std::size_t> oracle_recover(const ChannelInstance& ch, std::size_t k) {
  if (k > ch.n()) throw std::out_of_range("oracle_recover: k exceeds n");
  auto idx = argsort_desc(rx_power_map(ch));
  idx.resize(k);
  return idx;
}

std::vector<std::pair<std::size_t, std::size_t>> oracle_recover_pairs(const ChannelInstance& ch,
                                                                      std::size_t k) {
  if (!ch.two_sided()) throw std::logic_error("oracle_recover_pairs: channel is one-sided");
  const auto map = dense_power_map(ch);
  auto idx = argsort_desc(map.power);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < std::min(k, idx.size()); ++i) out.emplace_back(idx[i] / ch.n(), idx[i] % ch.n());
  return out;
}

}  // namespace sparsebeam::oracle
