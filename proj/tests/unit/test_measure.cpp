#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <sparsebeam/beams.hpp>
#include <sparsebeam/measure.hpp>

using namespace sparsebeam;

TEST_CASE("a zero channel measures zero") {
  FourierContext ctx(64);
  Engine rng = make_engine(1);
  const auto h = build_hash(ctx, HashGeometry::exact(64, 16), rng);
  const auto ms = measure_hash(h, make_one_sided_channel(DirectionSpectrum::zero(64)));
  CHECK(ms.values.size() == 16);
  for (double y : ms.values) CHECK(y == 0.0);
}

TEST_CASE("matched single beam measures |x| sqrt(n)") {
  FourierContext ctx(32);
  const DirectionSpectrum x(32, {{7, cplx(0.6, -0.8) * 0.5}});
  Link link(make_one_sided_channel(x));
  CHECK(link.measure_one(single_beam(ctx, 7)) == doctest::Approx(0.5 * std::sqrt(32.0)));
  CHECK(link.measure_one(single_beam(ctx, 8)) == doctest::Approx(0.0));
  CHECK(link.frames_used() == 2);
}

TEST_CASE("steered response") {
  CHECK(std::abs(steered_response(16, 3.0, 3.0)) == doctest::Approx(4.0));
  CHECK(std::abs(steered_response(16, 3.0, 5.0)) < 1e-12);
  CHECK(std::abs(steered_response(16, 3.0, 3.5)) < 4.0);
}

TEST_CASE("CFO phases do not change magnitudes") {
  FourierContext ctx(64);
  Engine rng = make_engine(5);
  const auto x = sample_sparse_spectrum(64, 3, rng);
  const auto ch = make_one_sided_channel(x, 10.0, 77);
  const auto h = build_hash(ctx, HashGeometry::exact(64, 16), rng);
  Link a(ch), b(ch, 12345);
  const auto ya = measure_hash(h, a).values;
  const auto yb = measure_hash(h, b).values;
  for (std::size_t i = 0; i < ya.size(); ++i) CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-12));
  // Same seed, same frames.
  CHECK(measure_hash(h, ch).values == ya);
  // A different seed draws different noise.
  CHECK(measure_hash(h, ch.with_seed(78)).values != ya);
}

TEST_CASE("noise power matches the configured SNR") {
  const DirectionSpectrum x(16, {{2, 1.0}});
  const auto ch = make_one_sided_channel(x, 10.0, 3);
  CHECK(ch.noise_variance() == doctest::Approx(0.1));
  Link link(ch);
  double power = 0.0;
  const int frames = 10000;
  for (int f = 0; f < frames; ++f) power += std::pow(link.measure_response(0.0), 2);
  CHECK(power / frames == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("a single path lights its bins in proportion to coverage") {
  FourierContext ctx(256);
  Engine rng = make_engine(9);
  const auto h = build_hash(ctx, HashGeometry::exact(256, 16), rng);
  const DirectionSpectrum x(256, {{100, cplx(0.0, 0.7)}});
  const auto ms = measure_hash(h, make_one_sided_channel(x));
  CHECK(ms.frames_used == 16);
  CHECK(ms.hash_id == h.id());
  std::size_t top = 0;
  for (std::size_t b = 0; b < 16; ++b) {
    CHECK(ms.values[b] * ms.values[b] == doctest::Approx(0.49 * h.coverage(b, 100)).epsilon(1e-9));
    if (ms.values[b] > ms.values[top]) top = b;
  }
  CHECK(top == h.geometry().nominal_bin(h.perm().rho(100), h.rotation()));
}

TEST_CASE("two paths in one bin can cancel") {
  FourierContext ctx(64);
  Engine rng = make_engine(4);
  const auto h = build_hash(ctx, HashGeometry::exact(64, 16), rng);
  const auto& a = h.patterns()[0];
  std::vector<std::size_t> order(64);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto p, auto q) { return h.coverage(0, p) > h.coverage(0, q); });
  const std::size_t i = order[0], j = order[1];
  CHECK(h.coverage(0, j) > 1.0);
  const cplx ri = a.apply(ctx.steering_column(i));
  const cplx rj = a.apply(ctx.steering_column(j));
  const DirectionSpectrum x(64, {{i, 1.0}, {j, -ri / rj}});
  const auto ms = measure_hash(h, make_one_sided_channel(x));
  CHECK(ms.values[0] < 1e-9);
  const auto alone = measure_hash(h, make_one_sided_channel(DirectionSpectrum(64, {{i, 1.0}})));
  CHECK(alone.values[0] == doctest::Approx(std::abs(ri)));
  CHECK(alone.values[0] > 1.0);
}

TEST_CASE("two-sided measurements") {
  const std::size_t n = 64;
  FourierContext ctx(n);
  Engine rng = make_engine(6);
  const auto g = HashGeometry::exact(n, 16);
  const auto rx = build_hash(ctx, g, rng);
  const auto tx = build_hash(ctx, g, rng);
  const auto x_rx = sample_sparse_spectrum(n, 2, rng, false);
  const auto x_tx = sample_sparse_spectrum(n, 3, rng, false);
  const auto ch = make_separable_channel(x_rx, x_tx);
  const auto ms = measure_two_sided(rx, tx, ch);
  CHECK(ms.rows == 16);
  CHECK(ms.cols == 16);
  CHECK(ms.frames_used == 256);
  CHECK(ms.tx_hash_id == tx.id());

  const CVec h_rx = ctx.inverse(x_rx.dense());
  const CVec h_tx = ctx.inverse(x_tx.dense());
  std::vector<double> a(16), c(16);
  for (std::size_t b = 0; b < 16; ++b) {
    a[b] = std::abs(rx.patterns()[b].apply(h_rx));
    c[b] = std::abs(tx.patterns()[b].apply(h_tx));
  }
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) CHECK(ms.at(i, j) == doctest::Approx(a[i] * c[j]).epsilon(1e-9));
  }
  const double sum_a = std::accumulate(a.begin(), a.end(), 0.0);
  const double sum_c = std::accumulate(c.begin(), c.end(), 0.0);
  const auto rows = ms.row_sums();
  const auto cols = ms.col_sums();
  for (std::size_t b = 0; b < 16; ++b) {
    CHECK(rows[b] == doctest::Approx(a[b] * sum_c).epsilon(1e-9));
    CHECK(cols[b] == doctest::Approx(c[b] * sum_a).epsilon(1e-9));
  }

  const auto t = ms.transposed();
  CHECK(t.frames_used == ms.frames_used);
  CHECK(t.hash_id == ms.tx_hash_id);
  CHECK(t.tx_hash_id == ms.hash_id);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) CHECK(t.at(j, i) == ms.at(i, j));
  }
  CHECK(t.row_sums() == cols);
}

TEST_CASE("one-sided measurement of a two-sided channel uses an omni transmitter") {
  const std::size_t n = 16;
  FourierContext ctx(n);
  const GridPath paths[] = {{3, 5, 1.0}};
  const auto ch = make_grid_channel(n, paths, kNoNoise, 1);
  const auto g = HashGeometry::exact(n, n);
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(1, 0));
  const HashFunction beams(ctx, g, t, Permutation::identity(n), 1);
  const auto ms = measure_hash(beams, ch);
  for (std::size_t b = 0; b < n; ++b) CHECK(ms.values[b] == doctest::Approx(b == 3 ? 4.0 : 0.0));
  Link link(ch);
  CHECK_THROWS(link.measure_one(single_beam(ctx, 3)));
  const DirectionSpectrum one_sided(n, {{4, 1.0}});
  Link wrong(make_one_sided_channel(one_sided));
  CHECK_THROWS(wrong.measure_pair(single_beam(ctx, 4), single_beam(ctx, 4)));
}
