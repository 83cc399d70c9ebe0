#pragma once

#include <set>

#include "qsim/shor.hpp"

namespace qsim {

// Search geometry: the walk happens in the plane spanned by the uniform
// marked superposition |a> and its complement |a_perp>, starting at angle
// theta0 = asin(sqrt(M/N)) and rotating by 2*theta0 per iteration.
struct GroverGeometry {
  int n = 0;
  std::uint64_t marked_count = 0;
  double theta0 = 0.0;

  double angle_after(long m) const { return (2 * m + 1) * theta0; }
};

inline GroverGeometry grover_geometry(int n, std::uint64_t marked_count) {
  GroverGeometry g;
  g.n = n;
  g.marked_count = marked_count;
  g.theta0 = std::asin(std::sqrt(static_cast<double>(marked_count) /
                                 static_cast<double>(std::uint64_t{1} << n)));
  return g;
}

// Sign flip on the marked components; reflection about |a_perp>.
inline StateVector oracle_reflect(const StateVector& s,
                                  const std::set<std::uint64_t>& marked) {
  if (marked.empty()) throw std::domain_error("oracle_reflect: no marked states");
  StateVector r = s;
  for (std::uint64_t x : marked) {
    if (x >= s.amps.size()) throw std::domain_error("oracle_reflect: index out of range");
    r.amps[x] = -r.amps[x];
  }
  return r;
}

// 2|psi0><psi0| - 1 with psi0 uniform: inversion about the mean amplitude.
inline StateVector diffuse(const StateVector& s) {
  Amplitude sum{0, 0};
  for (const auto& a : s.amps) sum += a;
  const Amplitude twice_mean = 2.0 * sum / static_cast<double>(s.amps.size());
  StateVector r = s;
  for (auto& a : r.amps) a = twice_mean - a;
  return r;
}

// Analytic success probability sin^2((2m+1) theta0) after m iterations.
inline double success_probability(int n, std::uint64_t marked_count, long m) {
  if (marked_count < 1) throw std::domain_error("success_probability: M must be positive");
  const double s = std::sin(grover_geometry(n, marked_count).angle_after(m));
  return s * s;
}

// round(pi/4 sqrt(N/M)) with exact halves rounded down; overshooting past
// the peak costs more than stopping one short.
inline long default_grover_iterations(int n, std::uint64_t marked_count) {
  const double v = std::numbers::pi / 4.0 *
                   std::sqrt(static_cast<double>(std::uint64_t{1} << n) /
                             static_cast<double>(marked_count));
  return static_cast<long>(std::ceil(v - 0.5));
}

struct GroverOutcome {
  std::uint64_t sampled = 0;
  bool hit = false;
  long iterations = 0;
  StateVector final_state;
};

inline StateVector grover_state_after(int n, const std::set<std::uint64_t>& marked,
                                      long iterations) {
  StateVector s = run_circuit(hadamard_layer(n), basis_state(n, 0));
  for (long m = 0; m < iterations; ++m) s = diffuse(oracle_reflect(s, marked));
  return s;
}

inline GroverOutcome grover_search(int n, const std::set<std::uint64_t>& marked,
                                   std::optional<long> iterations, Rng& rng) {
  const std::uint64_t size = std::uint64_t{1} << n;
  if (marked.empty())
    throw std::domain_error("grover_search: no marked states; count first");
  if (marked.size() >= size)
    throw std::domain_error("grover_search: every state is marked");
  GroverOutcome out;
  out.iterations = iterations ? *iterations : default_grover_iterations(n, marked.size());
  out.final_state = grover_state_after(n, marked, out.iterations);
  out.sampled = measure_all(out.final_state, rng).bits;
  out.hit = marked.count(out.sampled) > 0;
  return out;
}

// Gate-level diffusion: H layer, conditional phase flip around |0>, H layer.
// The middle step is diag(1, -1, ..., -1) = 2|0><0| - 1, so the sandwich is
// exactly 2|psi0><psi0| - 1.  Used to confirm the algebraic rank-1 update.
inline StateVector diffuse_gate_level(const StateVector& s) {
  const int n = s.num_qubits;
  StateVector r = run_circuit(hadamard_layer(n), s);
  for (std::uint64_t x = 1; x < r.amps.size(); ++x) r.amps[x] = -r.amps[x];
  r = run_circuit(hadamard_layer(n), r);
  return r;
}

// Counting by phase estimation: the Grover operator restricted to the
// {|a>, |a_perp>} plane is a rotation by 2 theta0, so its eigenphase encodes
// M through sin^2(pi phi' / 2^p) = M/N.
inline std::uint64_t quantum_count(int n, const std::set<std::uint64_t>& marked,
                                   int precision_bits, Rng& rng) {
  const std::uint64_t size = std::uint64_t{1} << n;
  if (marked.size() > size) throw std::domain_error("quantum_count: too many marks");
  const double theta0 = std::asin(
      std::sqrt(static_cast<double>(marked.size()) / static_cast<double>(size)));
  const double c = std::cos(2 * theta0), s = std::sin(2 * theta0);
  const Gate rotation = make_gate(1, {{c, 0}, {-s, 0}, {s, 0}, {c, 0}});
  // |psi0> in the (|a_perp>, |a>) basis
  const StateVector start =
      make_state(1, {{std::cos(theta0), 0}, {std::sin(theta0), 0}});
  const std::uint64_t phi = phase_estimate(rotation, start, precision_bits, rng);
  const double est = std::sin(std::numbers::pi * static_cast<double>(phi) /
                              static_cast<double>(std::uint64_t{1} << precision_bits));
  return static_cast<std::uint64_t>(
      std::llround(static_cast<double>(size) * est * est));
}

// Full-space Grover operator as a dense matrix, for cross-checks at small n.
inline Gate grover_operator_dense(int n, const std::set<std::uint64_t>& marked) {
  const std::uint64_t size = std::uint64_t{1} << n;
  Gate g;
  g.arity = n;
  g.m.assign(size * size, Amplitude{0, 0});
  for (std::uint64_t col = 0; col < size; ++col) {
    StateVector e = basis_state(n, col);
    e = diffuse(oracle_reflect(e, marked));
    for (std::uint64_t row = 0; row < size; ++row) g.m[row * size + col] = e.amps[row];
  }
  return g;
}

}  // namespace qsim
