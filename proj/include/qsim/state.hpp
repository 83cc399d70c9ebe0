#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qsim {

using Amplitude = std::complex<double>;

inline constexpr double kTol = 1e-10;

// Bit/qubit convention used everywhere in this library:
//
//   A register of n qubits is a vector of 2^n amplitudes indexed by the
//   integer x = x_{n-1} x_{n-2} ... x_1 x_0 (binary).  Qubit 0 is the top
//   circuit wire and holds the MOST significant bit x_{n-1}; qubit q holds
//   bit (n-1-q).  So |10>_4 == |1010> puts its single 1 at index 10, and
//   tensor_product(a, b) places a's qubits in the high bits.
//
// States are immutable values: operations return fresh vectors.
struct StateVector {
  int num_qubits = 0;
  std::vector<Amplitude> amps;

  std::uint64_t dim() const { return std::uint64_t{1} << num_qubits; }
};

inline StateVector basis_state(int n, std::uint64_t x) {
  if (n < 1) throw std::domain_error("basis_state: need at least one qubit");
  StateVector s;
  s.num_qubits = n;
  s.amps.assign(std::uint64_t{1} << n, Amplitude{0.0, 0.0});
  if (x >= s.amps.size()) throw std::domain_error("basis_state: index out of range");
  s.amps[x] = Amplitude{1.0, 0.0};
  return s;
}

inline StateVector make_state(int n, std::vector<Amplitude> amps) {
  StateVector s;
  s.num_qubits = n;
  if (amps.size() != (std::uint64_t{1} << n))
    throw std::domain_error("make_state: amplitude count must be 2^n");
  s.amps = std::move(amps);
  return s;
}

inline double norm(const StateVector& s) {
  double n2 = 0.0;
  for (const auto& a : s.amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

inline StateVector normalize(const StateVector& s) {
  const double n = norm(s);
  if (n <= 0.0) throw std::domain_error("normalize: zero vector");
  StateVector r = s;
  for (auto& a : r.amps) a /= n;
  return r;
}

inline bool is_normalized(const StateVector& s, double tol = kTol) {
  return std::abs(norm(s) - 1.0) <= tol;
}

// a's qubits occupy the most significant positions of the result.
inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
  StateVector r;
  r.num_qubits = a.num_qubits + b.num_qubits;
  r.amps.resize(a.amps.size() * b.amps.size());
  const std::uint64_t db = b.amps.size();
  for (std::uint64_t xa = 0; xa < a.amps.size(); ++xa)
    for (std::uint64_t xb = 0; xb < db; ++xb)
      r.amps[xa * db + xb] = a.amps[xa] * b.amps[xb];
  return r;
}

// <a|b>; the conjugate is taken on the left argument.
inline Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits != b.num_qubits)
    throw std::domain_error("inner_product: dimension mismatch");
  Amplitude acc{0.0, 0.0};
  for (std::uint64_t x = 0; x < a.amps.size(); ++x)
    acc += std::conj(a.amps[x]) * b.amps[x];
  return acc;
}

// Unit vectors a, b describe the same physical state iff |<a|b>| = 1.
inline bool equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                     double tol = kTol) {
  return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

}  // namespace qsim
