#pragma once

#include <bit>
#include <optional>

#include "qsim/measure.hpp"
#include "qsim/numtheory.hpp"

namespace qsim {

// Sizing rule for period finding mod N: n0 bits hold N, the upper register
// gets n = 2*n0 so the data spans at least N periods, which is what the
// continued-fraction recovery needs.  r is the true period, computed
// classically here; the simulator uses it to build post-collapse states at
// sizes where the full register would not fit.
struct PeriodInstance {
  u64 n_mod = 0;   // N
  u64 a = 0;       // base, coprime to N
  int n0 = 0;      // bits of N
  int n = 0;       // upper-register width, 2*n0
  u64 r = 0;       // true period
};

inline PeriodInstance make_period_instance(u64 n_mod, u64 a) {
  if (n_mod < 3) throw std::domain_error("period instance: modulus too small");
  if (gcd_u64(a % n_mod == 0 ? n_mod : a, n_mod) != 1)
    throw std::domain_error("period instance: base shares a factor with N");
  PeriodInstance inst;
  inst.n_mod = n_mod;
  inst.a = a;
  inst.n0 = std::bit_width(n_mod);
  inst.n = 2 * inst.n0;
  inst.r = classical_period(a, n_mod);
  return inst;
}

inline constexpr int kShorFullPathQubitCap = 22;

// (1/sqrt(2^n)) sum_x |x>|a^x mod N> over n + n0 qubits.
inline StateVector prepare_period_state(const PeriodInstance& inst) {
  const int width = inst.n + inst.n0;
  if (width > kShorFullPathQubitCap)
    throw std::domain_error("prepare_period_state: register exceeds the size cap");
  StateVector s;
  s.num_qubits = width;
  s.amps.assign(std::uint64_t{1} << width, Amplitude{0, 0});
  const std::uint64_t dlow = std::uint64_t{1} << inst.n0;
  const std::uint64_t count = std::uint64_t{1} << inst.n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  u64 f = 1;  // a^x mod N, updated incrementally
  for (std::uint64_t x = 0; x < count; ++x) {
    s.amps[x * dlow + f] = amp;
    f = static_cast<u64>((u128(f) * inst.a) % inst.n_mod);
  }
  return s;
}

// Measures the lower register of a prepared state and returns the measured
// function value together with the collapsed upper register, which is the
// equally weighted progression (1/sqrt(Q')) sum_k |x0 + k r>.
inline std::pair<u64, StateVector> collapse_function_register(const StateVector& s,
                                                              const PeriodInstance& inst,
                                                              Rng& rng) {
  std::vector<int> lower(inst.n0);
  for (int q = 0; q < inst.n0; ++q) lower[q] = inst.n + q;
  const MeasurementResult m = measure_subset(s, lower, rng);
  const std::uint64_t dlow = std::uint64_t{1} << inst.n0;
  StateVector upper;
  upper.num_qubits = inst.n;
  upper.amps.resize(std::uint64_t{1} << inst.n);
  for (std::uint64_t x = 0; x < upper.amps.size(); ++x)
    upper.amps[x] = m.post_state.amps[x * dlow + m.bits];
  return {m.bits, upper};
}

// Builds the progression state directly on the n upper qubits, skipping the
// function register entirely.
inline StateVector structured_period_state(const PeriodInstance& inst, u64 x0) {
  if (x0 >= inst.r) throw std::domain_error("structured_period_state: offset >= period");
  StateVector s;
  s.num_qubits = inst.n;
  const std::uint64_t count = std::uint64_t{1} << inst.n;
  s.amps.assign(count, Amplitude{0, 0});
  const std::uint64_t terms = (count - 1 - x0) / inst.r + 1;
  const double amp = 1.0 / std::sqrt(static_cast<double>(terms));
  for (std::uint64_t k = 0; k < terms; ++k) s.amps[x0 + k * inst.r] = amp;
  return s;
}

// P(y) = (1/(2^n Q)) |sum_{k<Q} e^{2 pi i k r y / 2^n}|^2 with Q = [2^n/r],
// evaluated through the closed-form sine ratio.  The guard handles the 0/0
// at denominators within 1e-8 of a multiple of pi, where the ratio tends
// to Q.
struct YDistribution {
  std::vector<double> probs;  // indexed by y over [0, 2^n)
  u64 q = 0;                  // [2^n / r]
  std::vector<double> peak_centers;  // y_m = m 2^n / r, real-valued
};

inline YDistribution y_distribution(const PeriodInstance& inst) {
  const std::uint64_t count = std::uint64_t{1} << inst.n;
  YDistribution dist;
  dist.q = count / inst.r;
  dist.probs.resize(count);
  const double norm = 1.0 / (static_cast<double>(count) * static_cast<double>(dist.q));
  for (std::uint64_t y = 0; y < count; ++y) {
    // half-angle of the geometric sum: pi r y / 2^n, reduced mod pi
    const double frac = static_cast<double>((u128(inst.r) * y) % count) /
                        static_cast<double>(count);
    const double half = std::numbers::pi * frac;
    const double dist_to_pi = std::min(half, std::numbers::pi - half);
    double mag2;
    if (dist_to_pi < 1e-8) {
      mag2 = static_cast<double>(dist.q) * static_cast<double>(dist.q);
    } else {
      const double s = std::sin(static_cast<double>(dist.q) * half) / std::sin(half);
      mag2 = s * s;
    }
    dist.probs[y] = norm * mag2;
  }
  for (u64 m = 0; m < inst.r; ++m)
    dist.peak_centers.push_back(static_cast<double>(m) *
                                static_cast<double>(count) / static_cast<double>(inst.r));
  return dist;
}

enum class ShorPath { kFull, kStructured, kAnalytic };

// One quantum sample of y.  The circuit paths finish with the swapped-order
// transform so the measured bits read directly as the integer y; the
// analytic path draws from y_distribution instead.
inline u64 sample_y(const PeriodInstance& inst, Rng& rng,
                    ShorPath path = ShorPath::kStructured) {
  switch (path) {
    case ShorPath::kFull: {
      const StateVector prepared = prepare_period_state(inst);
      auto [f0, upper] = collapse_function_register(prepared, inst, rng);
      (void)f0;
      const StateVector transformed = run_circuit(qft_circuit(inst.n, true), upper);
      return measure_all(transformed, rng).bits;
    }
    case ShorPath::kStructured: {
      // the measured function value selects x0 with weight Q'(x0)/2^n
      const std::uint64_t count = std::uint64_t{1} << inst.n;
      const u64 x0 = static_cast<u64>(rng.next_below(count)) % inst.r;
      const StateVector upper = structured_period_state(inst, x0);
      const StateVector transformed = run_circuit(qft_circuit(inst.n, true), upper);
      return measure_all(transformed, rng).bits;
    }
    case ShorPath::kAnalytic: {
      const YDistribution dist = y_distribution(inst);
      const double target = rng.next_double();
      double cum = 0.0;
      for (std::uint64_t y = 0; y < dist.probs.size(); ++y) {
        cum += dist.probs[y];
        if (target < cum) return y;
      }
      return dist.probs.size() - 1;
    }
  }
  throw std::logic_error("sample_y: unknown path");
}

inline constexpr int kPeriodMultiplierCap = 8;

// Continued-fraction recovery: y/2^n ~ m/r, so the convergent denominator
// with the largest denominator below N gives r up to a common factor, which
// the small-multiple search removes.  y = 0 carries no information.
inline std::optional<u64> extract_period(u64 y, const PeriodInstance& inst) {
  if (y == 0) return std::nullopt;
  const u64 two_n = u64{1} << inst.n;
  const u64 r0 = best_fraction_below(y, two_n, inst.n_mod).second;
  if (r0 == 0) return std::nullopt;
  for (int c = 1; c <= kPeriodMultiplierCap; ++c) {
    const u64 cand = static_cast<u64>(c) * r0;
    if (cand > inst.n_mod) break;
    if (mod_exp(inst.a, cand, inst.n_mod) == 1) return cand;
  }
  return std::nullopt;
}

struct FactorResult {
  u64 p = 0, q = 0;
  int sampling_rounds = 0;  // quantum samples drawn
  int bases_tried = 0;
  bool lucky_gcd = false;  // a shared a factor with N outright
};

inline constexpr int kFactorSampleBudget = 48;

// Full driver: random base, period from quantum sampling, then the
// even-period / nontrivial-root checks turn a^{r/2} +- 1 into factors.
inline FactorResult factor(u64 n_mod, Rng& rng,
                           ShorPath path = ShorPath::kStructured,
                           std::optional<u64> forced_base = std::nullopt) {
  if (n_mod < 9 || n_mod % 2 == 0)
    throw std::domain_error("factor: need an odd composite of two distinct primes");
  u64 small = 0;
  for (u64 d = 3; d * d <= n_mod; d += 2)
    if (n_mod % d == 0) {
      small = d;
      break;
    }
  if (small == 0) throw std::domain_error("factor: input is prime");
  if (small * small == n_mod || !is_prime(n_mod / small))
    throw std::domain_error("factor: need a product of two distinct primes");

  FactorResult res;
  int samples_left = kFactorSampleBudget;
  while (samples_left > 0) {
    const u64 a = forced_base ? *forced_base : 2 + rng.next_below(n_mod - 3);
    ++res.bases_tried;
    const u64 g = gcd_u64(a, n_mod);
    if (g > 1 && g < n_mod) {
      res.p = std::min(g, n_mod / g);
      res.q = std::max(g, n_mod / g);
      res.lucky_gcd = true;
      return res;
    }
    const PeriodInstance inst = make_period_instance(n_mod, a);
    for (int tries = 0; tries < 6 && samples_left > 0; ++tries) {
      --samples_left;
      ++res.sampling_rounds;
      const u64 y = sample_y(inst, rng, path);
      const std::optional<u64> r = extract_period(y, inst);
      if (!r) continue;
      if (*r % 2 != 0) break;  // odd period: new base
      const u64 root = mod_exp(a, *r / 2, n_mod);
      if (root == n_mod - 1) break;  // a^{r/2} = -1: new base
      const u64 f1 = gcd_u64(root + 1, n_mod);
      const u64 f2 = gcd_u64(root - 1, n_mod);  // root != 1: r is minimal
      const u64 g1 = (f1 > 1 && f1 < n_mod) ? f1 : 0;
      const u64 g2 = (f2 > 1 && f2 < n_mod) ? f2 : 0;
      const u64 found = g1 ? g1 : g2;
      if (!found) break;
      res.p = std::min(found, n_mod / found);
      res.q = std::max(found, n_mod / found);
      return res;
    }
    if (forced_base) throw std::runtime_error("factor: forced base failed");
  }
  throw std::runtime_error("factor: sampling budget exhausted");
}

// Phase estimation: counting register, controlled-U^{2^l} ladder, inverse
// transform, measurement.  Exact when 2^n * phase/2pi is an integer; for a
// superposed eigenstate the measurement projects onto one eigenvalue.
inline u64 phase_estimate(const Gate& u, const StateVector& eigstate, int n_bits,
                          Rng& rng) {
  if (eigstate.num_qubits != u.arity)
    throw std::domain_error("phase_estimate: state/operator size mismatch");
  const int width = n_bits + u.arity;
  StateVector s = tensor_product(basis_state(n_bits, 0), eigstate);
  s = run_circuit(embed_upper(hadamard_layer(n_bits), width), s);

  Gate power = u;  // U^{2^l}
  for (int l = 0; l < n_bits; ++l) {
    std::vector<int> targets{n_bits - 1 - l};  // counting bit of weight 2^l
    for (int t = 0; t < u.arity; ++t) targets.push_back(n_bits + t);
    s = apply(s, controlled(power), targets);
    power = matmul(power, power);
  }

  s = run_circuit(embed_upper(inverse_qft_circuit(n_bits, true), width), s);
  std::vector<int> counting(n_bits);
  for (int q = 0; q < n_bits; ++q) counting[q] = q;
  return measure_subset(s, counting, rng).bits;
}

}  // namespace qsim
