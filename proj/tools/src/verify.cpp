#include "sbeam/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <sparsebeam/measure.hpp>
#include <sparsebeam/permute.hpp>
#include <sparsebeam/recover.hpp>

namespace sbeam {

using namespace sparsebeam;

namespace {

CVec random_complex(std::size_t n, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVec v(n);
  for (auto& x : v) x = {normal(rng), normal(rng)};
  return v;
}

PhasePattern random_pattern(std::size_t n, Engine& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  CVec w(n);
  for (auto& x : w) x = std::polar(1.0, phase(rng));
  return PhasePattern(std::move(w));
}

std::string label(const char* what, std::size_t a, std::size_t b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s (%zu, %zu)", what, a, b);
  return buf;
}

}  // namespace

std::size_t pinned_arms(std::size_t k) { return k <= 2 ? 4 : 2; }

double rate_tolerance(std::size_t trials) {
  if (trials == 0) return 1.0;
  return std::max(0.02, 2.0 / std::sqrt(static_cast<double>(trials)));
}

DetectionRates detection_rates(std::size_t n, std::size_t k, std::size_t trials, std::uint64_t seed,
                           double kappa_scale, std::vector<DetectionTrial>* per_trial) {
  DetectionRates out;
  out.n = n;
  out.k = k;
  out.trials = trials;
  out.geometry = HashGeometry::with_arms(n, pinned_arms(k));
  out.theory_mode = out.geometry.ragged;
  const HashOptions mode = out.theory_mode ? HashOptions::theory() : HashOptions::practical();
  const double kappa = kappa_scale * kDetectionThreshold;
  FourierContext ctx(n);
  std::size_t detected = 0, rejected = 0;
  if (per_trial) per_trial->clear();
  const std::uint64_t base = mix_seed(mix_seed(seed, n), k);
  for (std::size_t t = 0; t < trials; ++t) {
    Engine rng = make_engine(base, t);
    const DirectionSpectrum x = sample_sparse_spectrum(n, k, rng, true, 1);
    const ChannelInstance ch = make_one_sided_channel(x);
    const HashFunction h = build_hash(ctx, out.geometry, rng, mode);
    const MeasurementSet ms = measure_hash(h, ch);
    const double threshold = auto_threshold(h, estimate_total_energy(h, ms.values), k, kappa);
    const auto support = x.support();
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    const bool det = score(h, ms, support[pick(rng)]) >= threshold;
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    std::size_t i = 0;
    do {
      i = any(rng);
    } while (std::find(support.begin(), support.end(), i) != support.end());
    const bool rej = score(h, ms, i) < threshold;
    detected += det;
    rejected += rej;
    if (per_trial) per_trial->push_back({det, rej});
  }
  if (trials > 0) {
    out.detection = static_cast<double>(detected) / static_cast<double>(trials);
    out.rejection = static_cast<double>(rejected) / static_cast<double>(trials);
  }
  return out;
}

std::vector<PropertyResult> verify_boxcar() {
  std::vector<PropertyResult> out;
  const std::pair<std::size_t, std::size_t> cases[] = {{256, 16}, {1024, 32}, {4096, 64}};
  for (auto [n, p] : cases) {
    FourierContext ctx(n);
    const BoxcarFilter h = boxcar(ctx, p);
    out.push_back({label("boxcar H^_0 - 1", n, p), std::abs(h.centered(0) - 1.0), 1e-9,
                   std::abs(h.centered(0) - 1.0) <= 1e-9});

    // Main lobe: |j| <= N / (2P) stays inside [1/(2 pi), 1].
    double lo = 1.0, hi = 0.0, worst_ratio = 0.0, closed = 0.0;
    const auto main_lobe = static_cast<long long>(n / (2 * p));
    for (std::size_t j = 0; j < n; ++j) {
      const long long js = signed_index(j, n);
      const double v = h.centered(j);
      if (std::llabs(js) <= main_lobe) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      const double envelope = 2.0 / (1.0 + static_cast<double>(std::llabs(js)) * static_cast<double>(p) /
                                               static_cast<double>(n));
      worst_ratio = std::max(worst_ratio, std::abs(h.spectrum()[j]) / envelope);
      closed = std::max(closed, std::abs(v - h.closed_form(js)));
    }
    const double floor = 1.0 / (2.0 * kPi);
    out.push_back({label("boxcar main-lobe minimum", n, p), lo, floor, lo >= floor && hi <= 1.0 + 1e-12});
    out.push_back({label("boxcar |H^_j| / envelope max", n, p), worst_ratio, 1.0, worst_ratio <= 1.0});
    out.push_back({label("boxcar transform vs closed form", n, p), closed, 1e-9, closed <= 1e-9});

    // (F_i o H) . F'_p = H^_{i-p} with F_i at unit modulus.
    Engine rng = make_engine(n, p);
    std::uniform_int_distribution<std::size_t> any(0, n - 1);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t i = any(rng), q = any(rng);
      const CVec col = ctx.steering_column(q);
      cplx acc{0.0, 0.0};
      for (std::size_t m = 0; m < n; ++m) {
        acc += ctx.omega_pow(-static_cast<long long>((i * m) % n)) * h.taps()[m] * col[m];
      }
      worst = std::max(worst, std::abs(acc - h.spectrum()[(i + n - q) % n]));
    }
    out.push_back({label("measurement identity", n, p), worst, 1e-9, worst <= 1e-9});
  }
  return out;
}

std::vector<PropertyResult> verify_permutation(std::uint64_t seed) {
  std::vector<PropertyResult> out;
  for (std::size_t n : {31u, 64u}) {
    FourierContext ctx(n);
    Engine rng = make_engine(seed, n);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
      const PhasePattern a = random_pattern(n, rng);
      const CVec x = random_complex(n, rng);
      const Permutation perm = sample_permutation(n, rng, true);
      const double lhs = std::abs(apply_to_pattern(a, perm).apply(ctx.inverse(x)));
      const CVec px = permute_spectrum(perm, DirectionSpectrum::from_dense(x)).dense();
      const double rhs = std::abs(a.apply(ctx.inverse(px)));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back({label("permutation equivalence n, trials", n, 1000), worst, 1e-9, worst <= 1e-9});
  }
  return out;
}

std::vector<PropertyResult> verify_factorization(std::uint64_t seed) {
  const std::size_t n = 64;
  FourierContext ctx(n);
  const HashGeometry g = HashGeometry::for_sparsity(n, 8);
  double worst = 0.0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    Engine rng = make_engine(mix_seed(seed, 0xFAC7), trial);
    const auto x_rx = sample_sparse_spectrum(n, 3, rng, false);
    const auto x_tx = sample_sparse_spectrum(n, 3, rng, false);
    const ChannelInstance ch = make_separable_channel(x_rx, x_tx);
    const HashFunction rx = build_hash(ctx, g, rng);
    const HashFunction tx = build_hash(ctx, g, rng);
    const auto rows = measure_two_sided(rx, tx, ch).row_sums();
    const CVec h_rx = ctx.inverse(x_rx.dense());
    const CVec h_tx = ctx.inverse(x_tx.dense());
    double c = 0.0;
    for (const auto& pat : tx.patterns()) c += std::abs(pat.apply(h_tx));
    // Deviation relative to the largest row: bins that see no signal carry
    // only rounding noise, and dividing by their own value would amplify it.
    std::vector<double> expected(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) expected[i] = std::abs(rx.patterns()[i].apply(h_rx)) * c;
    const double scale = *std::max_element(expected.begin(), expected.end());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (scale > 0.0) worst = std::max(worst, std::abs(rows[i] - expected[i]) / scale);
    }
  }
  return {{label("two-sided row-sum factorization n, B", n, g.b_count), worst, 1e-9, worst <= 1e-9}};
}

std::vector<PropertyResult> verify_detection(const VerifyOptions& opts) {
  std::vector<PropertyResult> out;
  const auto trials = static_cast<std::size_t>(std::llround(1e4 * opts.trial_fraction));
  const double bound = 0.66 - rate_tolerance(trials);
  for (std::size_t n : {251u, 256u}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      const DetectionRates r = detection_rates(n, k, trials, opts.seed, opts.threshold_scale);
      char name[128];
      std::snprintf(name, sizeof name, "detection n=%zu K=%zu B=%zu %s", n, k, r.geometry.b_count,
                    r.theory_mode ? "theory" : "practical");
      out.push_back({name, r.detection, bound, r.detection >= bound});
      std::snprintf(name, sizeof name, "rejection n=%zu K=%zu B=%zu %s", n, k, r.geometry.b_count,
                    r.theory_mode ? "theory" : "practical");
      out.push_back({name, r.rejection, bound, r.rejection >= bound});
    }
  }
  return out;
}

bool run_verify(std::ostream& out, const VerifyOptions& opts) {
  std::vector<PropertyResult> all;
  for (auto&& suite : {verify_boxcar(), verify_permutation(opts.seed), verify_factorization(opts.seed),
                       verify_detection(opts)}) {
    all.insert(all.end(), suite.begin(), suite.end());
  }
  bool ok = true;
  char line[256];
  for (const auto& r : all) {
    std::snprintf(line, sizeof line, "%s  %-52s measured %.6g  bound %.6g\n", r.pass ? "PASS" : "FAIL",
                  r.name.c_str(), r.measured, r.bound);
    out << line;
    ok = ok && r.pass;
  }
  out << (ok ? "all properties hold\n" : "some properties failed\n");
  return ok;
}

}  // namespace sbeam
