#pragma once

#include "qsim/gates.hpp"
#include "qsim/rng.hpp"
#include "qsim/state.hpp"

namespace qsim {

// Probabilities below this are treated as exact zeros before sampling, so
// roundoff dust cannot produce spurious outcomes.
inline constexpr double kProbFloor = 1e-14;

struct MeasurementResult {
  std::uint64_t bits = 0;  // outcome, measured qubits packed in call order
  double probability = 0.0;
  StateVector post_state;
};

inline std::vector<double> probabilities(const StateVector& s) {
  std::vector<double> p(s.amps.size());
  for (std::uint64_t x = 0; x < s.amps.size(); ++x) p[x] = std::norm(s.amps[x]);
  return p;
}

namespace detail {

inline std::uint64_t sample_index(const std::vector<double>& probs, Rng& rng) {
  double total = 0.0;
  for (double p : probs) total += (p < kProbFloor) ? 0.0 : p;
  const double r = rng.next_double() * total;
  double cum = 0.0;
  std::uint64_t last = 0;
  for (std::uint64_t x = 0; x < probs.size(); ++x) {
    const double p = (probs[x] < kProbFloor) ? 0.0 : probs[x];
    if (p == 0.0) continue;
    cum += p;
    last = x;
    if (r < cum) return x;
  }
  return last;
}

}  // namespace detail

// Full computational-basis measurement; collapses to the sampled basis state.
inline MeasurementResult measure_all(const StateVector& s, Rng& rng) {
  const std::vector<double> p = probabilities(s);
  const std::uint64_t x = detail::sample_index(p, rng);
  MeasurementResult r;
  r.bits = x;
  r.probability = p[x];
  r.post_state = basis_state(s.num_qubits, x);
  return r;
}

// Measures the listed qubits only.  Outcome bit k of `bits` (counting from
// the most significant of the |qubits| bits) is the result for qubits[k].
// The post state is the renormalized conditional state on all qubits.
inline MeasurementResult measure_subset(const StateVector& s,
                                        const std::vector<int>& qubits, Rng& rng) {
  const int k = static_cast<int>(qubits.size());
  std::uint64_t seen = 0;
  for (int q : qubits) {
    if (q < 0 || q >= s.num_qubits)
      throw std::domain_error("measure_subset: qubit out of range");
    const std::uint64_t b = std::uint64_t{1} << q;
    if (seen & b) throw std::domain_error("measure_subset: duplicate qubit");
    seen |= b;
  }

  const auto outcome_of = [&](std::uint64_t x) {
    std::uint64_t o = 0;
    for (int i = 0; i < k; ++i) {
      const int bitpos = s.num_qubits - 1 - qubits[i];
      o = (o << 1) | ((x >> bitpos) & 1);
    }
    return o;
  };

  std::vector<double> marg(std::uint64_t{1} << k, 0.0);
  for (std::uint64_t x = 0; x < s.amps.size(); ++x)
    marg[outcome_of(x)] += std::norm(s.amps[x]);

  const std::uint64_t outcome = detail::sample_index(marg, rng);

  MeasurementResult r;
  r.bits = outcome;
  r.probability = marg[outcome];
  r.post_state = s;
  double kept = 0.0;
  for (std::uint64_t x = 0; x < s.amps.size(); ++x) {
    if (outcome_of(x) == outcome)
      kept += std::norm(s.amps[x]);
    else
      r.post_state.amps[x] = Amplitude{0, 0};
  }
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : r.post_state.amps) a *= scale;
  return r;
}

// <psi|O|psi> for a Hermitian observable acting on the listed qubits.
inline double expectation(const StateVector& s, const Gate& obs,
                          const std::vector<int>& targets) {
  if (!is_hermitian(obs)) throw std::domain_error("expectation: observable not Hermitian");
  const StateVector os = apply(s, obs, targets);
  return inner_product(s, os).real();
}

// sqrt(<A^2> - <A>^2), the rms deviation about the mean.  Evaluated as
// ||(A - <A>)psi|| so eigenvectors give zero without catastrophic
// cancellation.
inline double uncertainty(const StateVector& s, const Gate& obs,
                          const std::vector<int>& targets) {
  if (!is_hermitian(obs)) throw std::domain_error("uncertainty: observable not Hermitian");
  const StateVector os = apply(s, obs, targets);
  const double mean = inner_product(s, os).real();
  double var = 0.0;
  for (std::uint64_t x = 0; x < s.amps.size(); ++x)
    var += std::norm(os.amps[x] - mean * s.amps[x]);
  return std::sqrt(var);
}

}  // namespace qsim
