#include "sparsebeam/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sparsebeam {

namespace {

constexpr std::uint64_t kOmniApTag = 0xA9;
constexpr std::uint64_t kOmniClientTag = 0xC1;

std::size_t wrap_index(double f, std::size_t n) {
  long long p = std::llround(f) % static_cast<long long>(n);
  if (p < 0) p += static_cast<long long>(n);
  return static_cast<std::size_t>(p);
}

// responses[s * K + k]: grid beam s against path k on one side.
std::vector<cplx> grid_responses(const ChannelInstance& ch, Side side) {
  const std::size_t n = ch.n();
  const auto paths = ch.paths();
  std::vector<cplx> out(n * paths.size());
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < paths.size(); ++k) {
      const double f = side == Side::rx ? paths[k].rx_freq : paths[k].tx_freq;
      out[s * paths.size() + k] = steered_response(n, static_cast<double>(s), f);
    }
  }
  return out;
}

cplx pair_value(const ChannelInstance& ch, const cplx* rx, const cplx* tx) {
  const auto paths = ch.paths();
  cplx z{0.0, 0.0};
  for (std::size_t k = 0; k < paths.size(); ++k) {
    cplx term = paths[k].gain * rx[k];
    if (tx != nullptr) term *= tx[k];
    z += term;
  }
  return z;
}

double noise_reference(const ChannelInstance& ch) {
  const double nv = ch.noise_variance();
  if (nv > 0.0) return nv;
  const double ref = ch.reference_power();
  return ref > 0.0 ? ref : 1.0;
}

double to_db(double power, double reference) {
  return 10.0 * std::log10(std::max(power, 1e-300) / reference);
}

std::vector<std::size_t> top_indices(const std::vector<double>& v, std::size_t k) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  idx.resize(std::min(k, idx.size()));
  return idx;
}

}  // namespace

std::size_t AlignmentResult::rx_index(std::size_t n) const { return wrap_index(rx_choice, n); }
std::size_t AlignmentResult::tx_index(std::size_t n) const { return wrap_index(tx_choice, n); }

double achieved_snr_db(const ChannelInstance& ch, double rx_freq, double tx_freq) {
  const std::size_t n = ch.n();
  cplx z{0.0, 0.0};
  for (const auto& p : ch.paths()) {
    cplx term = p.gain * steered_response(n, rx_freq, p.rx_freq);
    if (ch.two_sided()) term *= steered_response(n, tx_freq, p.tx_freq);
    z += term;
  }
  return to_db(std::norm(z), noise_reference(ch));
}

double optimal_snr_db(const ChannelInstance& ch) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : ch.paths()) best = std::max(best, achieved_snr_db(ch, p.rx_freq, p.tx_freq));
  const std::size_t n = ch.n();
  const std::size_t kk = ch.paths().size();
  const auto rx = grid_responses(ch, Side::rx);
  const double ref = noise_reference(ch);
  if (!ch.two_sided()) {
    for (std::size_t s = 0; s < n; ++s) best = std::max(best, to_db(std::norm(pair_value(ch, &rx[s * kk], nullptr)), ref));
    return best;
  }
  const auto tx = grid_responses(ch, Side::tx);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t t = 0; t < n; ++t) {
      best = std::max(best, to_db(std::norm(pair_value(ch, &rx[r * kk], &tx[t * kk])), ref));
    }
  }
  return best;
}

double snr_loss(const AlignmentResult& result, double reference_snr_db) {
  return reference_snr_db - result.achieved_snr_db;
}

AlignmentResult exhaustive_search(const ChannelInstance& ch) {
  Link link(ch);
  return exhaustive_search(ch, link);
}

AlignmentResult exhaustive_search(const ChannelInstance& ch, Link& link) {
  const std::size_t n = ch.n();
  const std::size_t kk = ch.paths().size();
  const auto rx = grid_responses(ch, Side::rx);
  const std::uint64_t before = link.frames_used();
  AlignmentResult res;
  double best = -1.0;
  if (!ch.two_sided()) {
    for (std::size_t s = 0; s < n; ++s) {
      const double y = link.measure_response(pair_value(ch, &rx[s * kk], nullptr));
      if (y > best) {
        best = y;
        res.rx_choice = static_cast<double>(s);
      }
    }
  } else {
    const auto tx = grid_responses(ch, Side::tx);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t t = 0; t < n; ++t) {
        const double y = link.measure_response(pair_value(ch, &rx[r * kk], &tx[t * kk]));
        if (y > best) {
          best = y;
          res.rx_choice = static_cast<double>(r);
          res.tx_choice = static_cast<double>(t);
        }
      }
    }
  }
  res.frames_used = link.frames_used() - before;
  res.achieved_snr_db = achieved_snr_db(ch, res.rx_choice, res.tx_choice);
  return res;
}

std::vector<double> quasi_omni(std::size_t n, const QuasiOmniModel& model) {
  if (model.ripple_db < 0.0) throw std::invalid_argument("quasi_omni: ripple must be nonnegative");
  std::vector<double> amp(n, 1.0);
  if (model.ripple_db == 0.0 || n < 2) return amp;
  Engine rng = make_engine(model.seed, 0x0111);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> db(n);
  for (auto& v : db) v = normal(rng);
  const auto [lo, hi] = std::minmax_element(db.begin(), db.end());
  const double lo_v = *lo, span = *hi - *lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = span > 0.0 ? -model.ripple_db * (1.0 - (db[i] - lo_v) / span) : 0.0;
    amp[i] = std::pow(10.0, g / 20.0);
  }
  return amp;
}

std::uint64_t standard_11ad_frames(std::size_t n, std::size_t gamma) {
  return 4 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(gamma) * gamma;
}

AlignmentResult standard_11ad(const ChannelInstance& ch, const Standard11adOptions& opts) {
  Link link(ch);
  return standard_11ad(ch, link, opts);
}

AlignmentResult standard_11ad(const ChannelInstance& ch, Link& link, const Standard11adOptions& opts) {
  if (!ch.two_sided()) throw std::logic_error("standard_11ad: channel must be two-sided");
  const std::size_t n = ch.n();
  if (opts.gamma < 1 || opts.gamma > n) throw std::out_of_range("standard_11ad: gamma must lie in [1, n]");
  const auto paths = ch.paths();
  const std::size_t kk = paths.size();
  const auto rx = grid_responses(ch, Side::rx);
  const auto tx = grid_responses(ch, Side::tx);

  // Quasi-omni response of each side to each path; realization A for SLS, B for MID.
  auto omni_response = [&](std::uint64_t tag, std::uint64_t stage, Side side) {
    const auto amp = quasi_omni(n, {opts.ripple_db, mix_seed(mix_seed(ch.seed(), tag), stage)});
    CVec r(kk);
    for (std::size_t k = 0; k < kk; ++k) {
      const double f = side == Side::rx ? paths[k].rx_freq : paths[k].tx_freq;
      r[k] = amp[wrap_index(f, n)];
    }
    return r;
  };

  const std::uint64_t before = link.frames_used();
  std::vector<double> rx_score(n, 0.0), tx_score(n, 0.0);
  for (std::uint64_t stage = 0; stage < 2; ++stage) {
    const CVec client_omni = omni_response(kOmniClientTag, stage, Side::rx);
    const CVec ap_omni = omni_response(kOmniApTag, stage, Side::tx);
    for (std::size_t s = 0; s < n; ++s) {
      const double y = link.measure_response(pair_value(ch, client_omni.data(), &tx[s * kk]));
      tx_score[s] += 0.5 * y * y;
    }
    for (std::size_t s = 0; s < n; ++s) {
      const double y = link.measure_response(pair_value(ch, &rx[s * kk], ap_omni.data()));
      rx_score[s] += 0.5 * y * y;
    }
  }
  const auto rx_cand = top_indices(rx_score, opts.gamma);
  const auto tx_cand = top_indices(tx_score, opts.gamma);

  AlignmentResult res;
  double best = -1.0;
  for (std::size_t r : rx_cand) {
    for (std::size_t t : tx_cand) {
      const double y = link.measure_response(pair_value(ch, &rx[r * kk], &tx[t * kk]));
      if (y > best) {
        best = y;
        res.rx_choice = static_cast<double>(r);
        res.tx_choice = static_cast<double>(t);
      }
    }
  }
  res.frames_used = link.frames_used() - before;
  res.achieved_snr_db = achieved_snr_db(ch, res.rx_choice, res.tx_choice);
  return res;
}

}  // namespace sparsebeam
