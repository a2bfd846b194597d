#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <sparsebeam/measure.hpp>
#include <sparsebeam/oracle.hpp>
#include <sparsebeam/recover.hpp>

using namespace sparsebeam;

namespace {

std::vector<std::size_t> hashed_top_k(const FourierContext& ctx, const HashGeometry& g,
                                      const ChannelInstance& ch, std::size_t k, std::size_t l, Engine& rng) {
  std::vector<HashFunction> hashes;
  std::vector<std::vector<double>> y;
  std::vector<const HashFunction*> ptr;
  for (std::size_t i = 0; i < l; ++i) hashes.push_back(build_hash(ctx, g, rng));
  for (const auto& h : hashes) {
    ptr.push_back(&h);
    y.push_back(measure_hash(h, ch).values);
  }
  DetectionConfig cfg;
  cfg.k = k;
  cfg.b_count = g.b_count;
  cfg.l_hashes = l;
  auto idx = recover_one_sided(ptr, y, cfg).indices;
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

TEST_CASE("power maps of empty and single-path channels") {
  const auto zero = oracle::dense_power_map(make_one_sided_channel(DirectionSpectrum::zero(16)));
  CHECK(zero.power.size() == 16);
  for (double p : zero.power) CHECK(p == 0.0);

  const GridPath p[] = {{5, 12, cplx(0.0, 0.5)}};
  const auto map = oracle::dense_power_map(make_grid_channel(16, p, 20.0, 1));
  CHECK(map.two_sided);
  CHECK(map.power.size() == 256);
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t t = 0; t < 16; ++t) {
      CHECK(map.at(r, t) == doctest::Approx(r == 5 && t == 12 ? 0.25 * 256.0 : 0.0));
    }
  }
}

TEST_CASE("power maps agree with the measurement model") {
  const std::size_t n = 16;
  FourierContext ctx(n);
  const ChannelInstance ch(n, {{2.3, 7.9, 1.0}, {11.0, 4.4, cplx(0.3, -0.6)}}, true, kNoNoise, 0);
  const auto map = oracle::dense_power_map(ch);
  for (std::size_t r = 0; r < n; ++r) {
    const CVec rr = path_responses(ch, single_beam(ctx, r), Side::rx);
    for (std::size_t t = 0; t < n; ++t) {
      const CVec tt = path_responses(ch, single_beam(ctx, t), Side::tx);
      const double expected = std::norm(combine(ch, rr, tt));
      CHECK(std::fabs(map.at(r, t) - expected) <= 1e-12 * std::max(1.0, expected));
    }
  }
  const auto rx = oracle::rx_power_map(ch);
  for (std::size_t r = 0; r < n; ++r) {
    const CVec rr = path_responses(ch, single_beam(ctx, r), Side::rx);
    const CVec ones(2, 1.0);
    CHECK(rx[r] == doctest::Approx(std::norm(combine(ch, rr, ones))).epsilon(1e-12));
  }
}

TEST_CASE("oracle recovery") {
  const DirectionSpectrum x(32, {{3, 0.2}, {17, 1.0}, {25, cplx(0.0, -0.5)}});
  const auto ch = make_one_sided_channel(x);
  CHECK(oracle::oracle_recover(ch, 2) == std::vector<std::size_t>{17, 25});
  CHECK(oracle::oracle_recover(ch, 3) == std::vector<std::size_t>{17, 25, 3});

  const GridPath p[] = {{1, 2, 0.5}, {4, 9, 1.0}};
  const auto pairs = oracle::oracle_recover_pairs(make_grid_channel(16, p, kNoNoise, 0), 2);
  CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{4, 9});
  CHECK(pairs[1] == std::pair<std::size_t, std::size_t>{1, 2});
}

TEST_CASE("adjacent path pairs on a 32-element array") {
  // Every pair {i, i+1} with equal energy; counts frozen from one enumeration.
  const std::size_t n = 32;
  FourierContext ctx(n);
  const auto g = HashGeometry::for_sparsity(n, default_b_count(n, 2));
  REQUIRE(g.b_count == 8);
  int oracle_hits = 0, hashed_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const DirectionSpectrum x(n, {{i, 1.0}, {j, cplx(0.0, 1.0)}});
    const auto ch = make_one_sided_channel(x);
    auto truth = x.support();
    auto o = oracle::oracle_recover(ch, 2);
    std::sort(o.begin(), o.end());
    oracle_hits += o == truth;
    Engine rng = make_engine(32, i);
    hashed_hits += hashed_top_k(ctx, g, ch, 2, default_l_hashes(n), rng) == truth;
  }
  CHECK(oracle_hits == 32);
  CHECK(hashed_hits == 32);
}

TEST_CASE("hashed recovery agrees with the oracle on separated spectra") {
  // Frozen agreement counts out of 300 draws.
  const std::size_t n = 256, trials = 300;
  FourierContext ctx(n);
  for (std::size_t k : {1u, 3u}) {
    const auto g = HashGeometry::for_sparsity(n, default_b_count(n, k));
    int agree = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Engine rng = make_engine(256 + k, t);
      const auto x = sample_sparse_spectrum(n, k, rng, true, 4);
      const auto ch = make_one_sided_channel(x);
      auto o = oracle::oracle_recover(ch, k);
      std::sort(o.begin(), o.end());
      agree += hashed_top_k(ctx, g, ch, k, default_l_hashes(n), rng) == o;
    }
    CHECK(agree == (k == 1 ? 298 : 299));
    CHECK(agree >= 0.95 * trials);
  }
}
