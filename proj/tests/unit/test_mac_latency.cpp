#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <sparsebeam/mac_latency.hpp>

using namespace sparsebeam;

namespace {

double delay_ms(Scheme s, std::size_t n, std::size_t clients) {
  const auto b = scheme_frame_budget(s, n, 4, 4);
  return 1e3 * alignment_delay(b.client, b.ap, clients);
}

// Slot-by-slot simulation of the beacon interval, independent of the closed form.
double simulated_ms(std::uint64_t client_frames, std::uint64_t ap_frames, std::size_t clients) {
  std::vector<std::uint64_t> remaining(clients, client_frames);
  double t = 0.0;
  for (std::size_t bi = 0;; ++bi) {
    double now = bi * 0.1 + ap_frames * 15.8e-6;
    std::size_t next = 0;
    for (std::size_t slot = 0; slot < 8; ++slot) {
      while (next < clients && remaining[next] == 0) ++next;
      now += 16 * 15.8e-6;
      if (next == clients) break;
      remaining[next] = remaining[next] > 16 ? remaining[next] - 16 : 0;
      t = now;
      if (remaining[next] > 0) {
        // Round-robin: move on to the next client that still needs slots.
        std::size_t probe = next + 1;
        while (probe < clients && remaining[probe] == 0) ++probe;
        if (probe < clients) next = probe;
        else next = 0;
      } else {
        ++next;
      }
      if (std::all_of(remaining.begin(), remaining.end(), [](auto r) { return r == 0; })) return 1e3 * t;
    }
  }
}

}  // namespace

TEST_CASE("reference delay table") {
  struct Row {
    std::size_t n;
    double agile_one, standard_one, agile_four, standard_four;
  };
  const Row rows[] = {
      {8, 0.44, 0.51, 1.20, 1.27},       {16, 0.51, 1.01, 1.26, 2.53},
      {64, 0.89, 4.04, 2.40, 304.04},    {128, 0.95, 106.07, 2.46, 706.07},
      {256, 1.01, 310.11, 2.53, 1510.11},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CHECK(std::fabs(delay_ms(Scheme::agile, r.n, 1) - r.agile_one) <= 0.006);
    CHECK(std::fabs(delay_ms(Scheme::standard, r.n, 1) - r.standard_one) <= 0.006);
    CHECK(std::fabs(delay_ms(Scheme::agile, r.n, 4) - r.agile_four) <= 0.006);
    CHECK(std::fabs(delay_ms(Scheme::standard, r.n, 4) - r.standard_four) <= 0.006);
  }
}

TEST_CASE("closed form matches a slot-by-slot simulation") {
  for (std::uint64_t frames : {1u, 16u, 17u, 48u, 128u, 512u, 4096u}) {
    for (std::uint64_t ap : {0u, 32u}) {
      for (std::size_t clients : {1u, 2u, 4u, 7u}) {
        CAPTURE(frames);
        CAPTURE(clients);
        CHECK(1e3 * alignment_delay(frames, ap, clients) == doctest::Approx(simulated_ms(frames, ap, clients)));
      }
    }
  }
}

TEST_CASE("delay properties") {
  CHECK(alignment_delay(0, 50, 3) == 0.0);
  MacTimingConfig cfg;
  cfg.fixed_overhead = 0.002;
  CHECK(alignment_delay(0, 0, 1, cfg) == doctest::Approx(0.002));
  CHECK(alignment_delay(16, 0, 1, cfg) == doctest::Approx(0.002 + 16 * 15.8e-6));
  CHECK_THROWS(alignment_delay(10, 0, 0));
  cfg.ssw_frames_per_slot = 0;
  CHECK_THROWS(alignment_delay(10, 0, 1, cfg));

  for (std::size_t clients : {1u, 4u}) {
    double prev = 0.0;
    for (std::uint64_t f = 1; f < 2000; f += 7) {
      const double d = alignment_delay(f, 0, clients);
      CHECK(d >= prev);
      prev = d;
    }
  }
  // The standard sweep outgrows one interval's A-BFT between 64 and 128 elements.
  CHECK(delay_ms(Scheme::standard, 64, 1) < 10.0);
  CHECK(delay_ms(Scheme::standard, 128, 1) > 100.0);
  // The AP sweep is shared, so four clients cost less than four single-client runs.
  const auto b = scheme_frame_budget(Scheme::standard, 64, 4, 4);
  CHECK(alignment_delay(b.client, b.ap, 4) < 4.0 * alignment_delay(b.client, b.ap, 1) + 0.3);
  for (std::size_t n : {8u, 16u, 64u, 128u, 256u}) {
    CHECK(delay_ms(Scheme::agile, n, 1) <= delay_ms(Scheme::standard, n, 1));
    CHECK(delay_ms(Scheme::agile, n, 4) <= delay_ms(Scheme::standard, n, 4));
    CHECK(delay_ms(Scheme::standard, n, 1) <= delay_ms(Scheme::exhaustive, n, 1));
  }
}

TEST_CASE("frame budgets") {
  CHECK(scheme_frame_budget(Scheme::agile, 256, 4).total == 128);
  CHECK(scheme_frame_budget(Scheme::agile, 256, 4).client == 32);
  CHECK(scheme_frame_budget(Scheme::agile, 256, 16).total == 2048);
  CHECK(scheme_frame_budget(Scheme::exhaustive, 16, 4).total == 256);
  CHECK(scheme_frame_budget(Scheme::exhaustive, 16, 4).ap == 0);
  CHECK(scheme_frame_budget(Scheme::standard, 64, 4, 4).total == 272);
  CHECK(scheme_frame_budget(Scheme::standard, 64, 4, 4).ap == 128);
  CHECK(scheme_frame_budget(Scheme::exhaustive, 256, 4).total /
            scheme_frame_budget(Scheme::agile, 256, 4).total ==
        512);
  CHECK_THROWS(scheme_frame_budget(Scheme::agile, 1, 4));
}

TEST_CASE("scheme names") {
  CHECK(parse_scheme("agile") == Scheme::agile);
  CHECK(parse_scheme("exhaustive") == Scheme::exhaustive);
  CHECK(parse_scheme("802.11ad") == Scheme::standard);
  CHECK(parse_scheme("standard") == Scheme::standard);
  CHECK(scheme_name(Scheme::standard) == "802.11ad");
  for (Scheme s : {Scheme::agile, Scheme::exhaustive, Scheme::standard}) CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK_THROWS_AS(parse_scheme("omni"), std::invalid_argument);
}
