#include "qsim/shor.hpp"

#include <map>
#include <set>

#include "helpers.hpp"

using namespace qsim;

TEST_CASE("prepare_period_state") {
  const PeriodInstance inst = make_period_instance(15, 7);
  REQUIRE(inst.n0 == 4);
  REQUIRE(inst.n == 8);
  REQUIRE(inst.r == 4);

  const StateVector s = prepare_period_state(inst);
  REQUIRE(is_normalized(s));
  const std::uint64_t dlow = 16;
  std::set<u64> seen_f;
  for (std::uint64_t x = 0; x < 256; ++x) {
    const u64 fx = mod_exp(7, x, 15);
    seen_f.insert(fx);
    for (std::uint64_t y = 0; y < dlow; ++y) {
      const Amplitude a = s.amps[x * dlow + y];
      if (y == fx)
        REQUIRE(std::abs(a - Amplitude{1.0 / 16, 0}) < 1e-12);
      else
        REQUIRE(std::abs(a) < 1e-15);
    }
  }
  // lower register takes exactly the four values 1, 7, 4, 13
  REQUIRE(seen_f == std::set<u64>{1, 7, 4, 13});
  // the x = 0 column holds |1>
  REQUIRE(std::abs(s.amps[1] - Amplitude{1.0 / 16, 0}) < 1e-12);

  REQUIRE_THROWS_AS(make_period_instance(15, 6), std::domain_error);
  REQUIRE_THROWS_AS(prepare_period_state(make_period_instance(8191, 3)),
                    std::domain_error);
}

TEST_CASE("collapse_function_register") {
  const PeriodInstance inst = make_period_instance(15, 7);
  const StateVector prepared = prepare_period_state(inst);
  Rng rng(500);
  for (int it = 0; it < 10; ++it) {
    auto [f0, upper] = collapse_function_register(prepared, inst, rng);
    REQUIRE((f0 == 1 || f0 == 7 || f0 == 4 || f0 == 13));
    REQUIRE(is_normalized(upper));
    // support is an arithmetic progression with gap r = 4, equal weights
    std::optional<u64> x0;
    double amp = 0;
    for (std::uint64_t x = 0; x < upper.amps.size(); ++x) {
      if (std::abs(upper.amps[x]) < 1e-12) continue;
      if (!x0) {
        x0 = x;
        amp = std::abs(upper.amps[x]);
      } else {
        REQUIRE((x - *x0) % 4 == 0);
      }
      REQUIRE(std::abs(std::abs(upper.amps[x]) - amp) < 1e-12);
    }
    REQUIRE(x0.has_value());
    REQUIRE(*x0 < 4);
    REQUIRE(mod_exp(7, *x0, 15) == f0);
  }
}

TEST_CASE("structured_period_state matches the collapsed full path") {
  const PeriodInstance inst = make_period_instance(15, 7);
  const StateVector prepared = prepare_period_state(inst);
  Rng rng(501);
  auto [f0, upper] = collapse_function_register(prepared, inst, rng);
  // recover x0 from the measured function value
  u64 x0 = 0;
  while (mod_exp(7, x0, 15) != f0) ++x0;
  qsim::test::check_close(structured_period_state(inst, x0), upper, 1e-12);

  // x0 = 0, r = 2^{n-1}: exactly two support points
  PeriodInstance toy;
  toy.n_mod = 5;
  toy.a = 2;
  toy.n0 = 3;
  toy.n = 4;
  toy.r = 8;
  const StateVector two = structured_period_state(toy, 0);
  REQUIRE(std::abs(two.amps[0] - Amplitude{1 / std::sqrt(2.0), 0}) < 1e-12);
  REQUIRE(std::abs(two.amps[8] - Amplitude{1 / std::sqrt(2.0), 0}) < 1e-12);
  REQUIRE(is_normalized(two));
}

TEST_CASE("y_distribution for N=91 a=4 reproduces the peak table") {
  const PeriodInstance inst = make_period_instance(91, 4);
  REQUIRE(inst.n == 14);
  REQUIRE(inst.r == 6);
  const YDistribution dist = y_distribution(inst);
  REQUIRE(dist.q == 2730);

  double total = 0;
  for (double p : dist.probs) total += p;
  REQUIRE(std::abs(total - 1.0) < 1e-9);

  const std::vector<std::pair<u64, double>> peaks = {
      {0, 0.167}, {2731, 0.114}, {5461, 0.114},
      {8192, 0.167}, {10923, 0.114}, {13653, 0.114}};
  for (const auto& [y, p] : peaks)
    REQUIRE(std::abs(dist.probs[y] - p) < 0.001);
}

TEST_CASE("power-of-two period gives exact delta peaks") {
  const PeriodInstance inst = make_period_instance(15, 7);  // r = 4
  const YDistribution dist = y_distribution(inst);
  const u64 q = (u64{1} << inst.n) / 4;
  for (std::uint64_t y = 0; y < dist.probs.size(); ++y) {
    if (y % q == 0)
      REQUIRE(dist.probs[y] == Catch::Approx(0.25).margin(1e-12));
    else
      REQUIRE(dist.probs[y] < 1e-12);
  }
}

TEST_CASE("peak envelope and weights") {
  const PeriodInstance inst = make_period_instance(91, 4);
  const YDistribution dist = y_distribution(inst);
  const double inv_r = 1.0 / static_cast<double>(inst.r);
  for (u64 m = 1; m < inst.r; ++m) {
    const double center = dist.peak_centers[m];
    // envelope: P(y) ~ (1/r) (sin pi delta / pi delta)^2 near the peak
    for (int off = -2; off <= 2; ++off) {
      const u64 y = static_cast<u64>(std::llround(center)) + off;
      const double delta = static_cast<double>(y) - center;
      const double env = std::abs(delta) < 1e-12
                             ? inv_r
                             : inv_r * std::pow(std::sin(std::numbers::pi * delta) /
                                                    (std::numbers::pi * delta),
                                                2);
      REQUIRE(std::abs(dist.probs[y] - env) < 1e-3);
    }
    // nearest integer carries more than (4/pi^2)/r
    const u64 nearest = static_cast<u64>(std::llround(center));
    REQUIRE(dist.probs[nearest] > (4.0 / (std::numbers::pi * std::numbers::pi)) * inv_r);
    // the window around the peak holds ~1/r of the weight
    double window = 0;
    for (long off = -80; off <= 80; ++off) {
      const long y = std::lround(center) + off;
      if (y >= 0 && y < long(dist.probs.size())) window += dist.probs[y];
    }
    REQUIRE(std::abs(window - inv_r) < 1e-3);
  }
}

TEST_CASE("the three sampling paths agree in distribution") {
  const PeriodInstance inst = make_period_instance(15, 7);
  Rng rng(502);
  const int shots = 10000;
  std::map<u64, int> full, structured, analytic;
  for (int i = 0; i < shots; ++i) {
    ++full[sample_y(inst, rng, ShorPath::kFull)];
    ++structured[sample_y(inst, rng, ShorPath::kStructured)];
    ++analytic[sample_y(inst, rng, ShorPath::kAnalytic)];
  }
  // support is the four multiples of 64 (r = 4 is a power of two)
  for (const auto* counts : {&full, &structured, &analytic}) {
    REQUIRE(counts->size() == 4);
    for (const auto& [y, c] : *counts) {
      REQUIRE(y % 64 == 0);
      // expected 2500 per cell, sd = 43
      REQUIRE(std::abs(c - shots / 4) < 5 * 43);
    }
  }
}

TEST_CASE("extract_period") {
  const PeriodInstance inst = make_period_instance(91, 4);
  // y = 5461 gives 1/3; r0 = 3 fails, c = 2 gives the period 6
  REQUIRE(extract_period(5461, inst) == std::optional<u64>{6});
  // y = 13653 gives 5/6 directly
  REQUIRE(extract_period(13653, inst) == std::optional<u64>{6});
  REQUIRE_FALSE(extract_period(0, inst).has_value());
}

TEST_CASE("sampling plus extraction recovers the classical period") {
  Rng rng(503);
  for (const auto& [n_mod, a] : std::vector<std::pair<u64, u64>>{
           {15, 7}, {15, 2}, {21, 2}, {33, 5}, {35, 3}, {91, 4}, {91, 19}}) {
    const PeriodInstance inst = make_period_instance(n_mod, a);
    const u64 want = classical_period(a, n_mod);
    int hits = 0;
    const int seeds = 20;
    for (int seed = 0; seed < seeds; ++seed) {
      Rng local = rng.split(seed);
      for (int attempt = 0; attempt < 10; ++attempt) {
        const auto r = extract_period(sample_y(inst, local), inst);
        if (r == want) {
          ++hits;
          break;
        }
      }
    }
    REQUIRE(hits >= seeds * 95 / 100);
  }
}

TEST_CASE("factor") {
  Rng rng(504);
  const FactorResult a = factor(91, rng, ShorPath::kStructured, 4);
  REQUIRE(a.p == 7);
  REQUIRE(a.q == 13);

  const FactorResult b = factor(15, rng, ShorPath::kStructured, 7);
  REQUIRE(b.p == 3);
  REQUIRE(b.q == 5);

  int successes = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng local = rng.split(seed);
    try {
      const FactorResult r = factor(15, local);
      if (r.p == 3 && r.q == 5) ++successes;
    } catch (const std::runtime_error&) {
    }
  }
  REQUIRE(successes > 40);

  REQUIRE_THROWS_AS(factor(12, rng), std::domain_error);  // even
  REQUIRE_THROWS_AS(factor(13, rng), std::domain_error);  // prime
  REQUIRE_THROWS_AS(factor(27, rng), std::domain_error);  // prime power
}

TEST_CASE("phase_estimate") {
  Rng rng(505);
  const StateVector minus = make_state(1, {{1 / std::sqrt(2.0), 0},
                                           {-1 / std::sqrt(2.0), 0}});
  REQUIRE(phase_estimate(standard_gate("X"), minus, 1, rng) == 1);

  const StateVector plus = make_state(1, {{1 / std::sqrt(2.0), 0},
                                          {1 / std::sqrt(2.0), 0}});
  REQUIRE(phase_estimate(standard_gate("X"), plus, 1, rng) == 0);

  // R_1 |1> = i |1> = e^{2 pi i / 4} |1>, two bits give phi' = 1
  REQUIRE(phase_estimate(standard_gate("R_1"), basis_state(1, 1), 2, rng) == 1);

  // superposed input projects onto one of the two eigenvalues
  const StateVector mix = basis_state(1, 0);
  for (int it = 0; it < 20; ++it) {
    const u64 phi = phase_estimate(standard_gate("X"), mix, 3, rng);
    REQUIRE((phi == 0 || phi == 4));  // +1 or -1 eigenvalue
  }
}
