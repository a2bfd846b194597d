#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <sparsebeam/fourier.hpp>
#include <sparsebeam/permute.hpp>

using namespace sparsebeam;

namespace {

PhasePattern random_pattern(std::size_t n, Engine& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  CVec w(n);
  for (auto& x : w) x = std::polar(1.0, phase(rng));
  return PhasePattern(std::move(w));
}

CVec random_vector(std::size_t n, Engine& rng) {
  std::normal_distribution<double> g;
  CVec v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

}  // namespace

TEST_CASE("modular inverse") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(5, 8) == 5);
  CHECK(mod_inverse(4, 8) == 0);
  CHECK(mod_inverse(1, 1) == 0);
  for (std::size_t x = 1; x < 31; ++x) CHECK((x * mod_inverse(x, 31)) % 31 == 1);
}

TEST_CASE("worked permutation on seven directions") {
  const Permutation p(7, 3, 2, 4);
  CHECK(p.sigma_inv() == 5);
  CHECK(p.rho(0) == 2);
  CHECK(p.rho(1) == 0);
  CHECK(p.rho(2) == 5);
  CHECK(p.tau(0) == (4 * 6) % 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(p.rho_inverse(p.rho(i)) == i);
  CHECK_THROWS_AS(Permutation(8, 4, 0, 0), std::invalid_argument);
  CHECK(Permutation::identity(9).is_identity());
}

TEST_CASE("sampled permutations are bijections with unit sigma") {
  Engine rng = make_engine(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Permutation p8 = sample_permutation(8, rng, false);
    CHECK(p8.sigma() % 2 == 1);
    CHECK(p8.b() == 0);
    const Permutation p16 = sample_permutation(16, rng, true);
    std::set<std::size_t> image;
    for (std::size_t i = 0; i < 16; ++i) image.insert(p16.rho(i));
    CHECK(image.size() == 16);
  }
}

TEST_CASE("rho is pairwise independent over the permutation family") {
  // Enumerating sigma over the units and a over Z_31: every ordered pair of
  // distinct targets is reached exactly once, i.e. probability 1/(n(n-1)).
  const std::size_t n = 31;
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 1}, {3, 17}, {30, 12}}) {
    std::map<std::pair<std::size_t, std::size_t>, int> hits;
    std::size_t family = 0;
    for (std::size_t sigma = 1; sigma < n; ++sigma) {
      for (std::size_t a = 0; a < n; ++a) {
        const Permutation p(n, sigma, a, 0);
        ++hits[{p.rho(i), p.rho(j)}];
        ++family;
      }
    }
    CHECK(family == n * (n - 1));
    CHECK(hits.size() == n * (n - 1));
    for (const auto& [cell, count] : hits) {
      CHECK(cell.first != cell.second);
      CHECK(count == 1);
    }
  }
}

TEST_CASE("pattern-side and spectrum-side permutations agree exactly") {
  for (std::size_t n : {31u, 64u}) {
    FourierContext ctx(n);
    Engine rng = make_engine(17, n);
    for (int trial = 0; trial < 100; ++trial) {
      const PhasePattern a = random_pattern(n, rng);
      const CVec x = random_vector(n, rng);
      const Permutation perm = sample_permutation(n, rng, true);
      const PhasePattern ap = apply_to_pattern(a, perm);
      for (auto w : ap.weights()) CHECK(std::abs(w) == doctest::Approx(1.0));
      const cplx lhs = ap.apply(ctx.inverse(x));
      const cplx rhs = a.apply(ctx.inverse(permute_spectrum(perm, DirectionSpectrum::from_dense(x)).dense()));
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("permuting with the inverse map restores magnitudes") {
  const std::size_t n = 64;
  Engine rng = make_engine(2);
  const auto x = DirectionSpectrum::from_dense(random_vector(n, rng));
  for (int trial = 0; trial < 20; ++trial) {
    const Permutation p = sample_permutation(n, rng, true);
    const std::size_t shift = (n - (p.sigma() * p.a()) % n) % n;
    const Permutation back(n, p.sigma_inv(), shift, 0);
    for (std::size_t i = 0; i < n; ++i) CHECK(back.rho(p.rho(i)) == i);
    const CVec restored = permute_spectrum(back, permute_spectrum(p, x)).dense();
    const CVec original = x.dense();
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(restored[i]) == doctest::Approx(std::abs(original[i])));
  }
}
