#pragma once

#include <bit>
#include <optional>

#include "qsim/measure.hpp"

namespace qsim {

// Truth table of a classical function on n_in bits with n_out output bits.
struct OracleSpec {
  int n_in = 0;
  int n_out = 0;
  std::vector<std::uint64_t> table;  // size 2^n_in, entries < 2^n_out

  std::uint64_t operator()(std::uint64_t x) const { return table[x]; }
};

inline OracleSpec make_oracle(int n_in, int n_out, std::vector<std::uint64_t> table) {
  OracleSpec f;
  f.n_in = n_in;
  f.n_out = n_out;
  if (table.size() != (std::uint64_t{1} << n_in))
    throw std::domain_error("make_oracle: table must cover every input");
  for (std::uint64_t v : table)
    if (v >= (std::uint64_t{1} << n_out))
      throw std::domain_error("make_oracle: output exceeds n_out bits");
  f.table = std::move(table);
  return f;
}

// Parity of the bitwise AND: x . y mod 2.
inline int bitwise_dot(std::uint64_t x, std::uint64_t y) {
  return std::popcount(x & y) & 1;
}

// |x>|y> -> |x>|y xor f(x)>, realized as an index permutation applied
// directly to the amplitude array rather than a compiled gate list.  The map
// is its own inverse.
struct QuantumOracle {
  OracleSpec f;
  mutable long calls = 0;

  StateVector operator()(const StateVector& s) const {
    if (s.num_qubits != f.n_in + f.n_out)
      throw std::domain_error("oracle: register width must be n_in + n_out");
    ++calls;
    StateVector out = s;
    const std::uint64_t dout = std::uint64_t{1} << f.n_out;
    for (std::uint64_t z = 0; z < s.amps.size(); ++z) {
      const std::uint64_t x = z / dout;
      const std::uint64_t y = z % dout;
      out.amps[x * dout + (y ^ f.table[x])] = s.amps[z];
    }
    return out;
  }
};

inline QuantumOracle build_oracle(OracleSpec f) { return QuantumOracle{std::move(f)}; }

enum class Classification { kConstant, kBalanced };

struct OracleRunStats {
  Classification result = Classification::kConstant;
  long oracle_calls = 0;
};

namespace detail {

// Deterministic readout for algorithms that end in a basis state on the
// upper register: find the index carrying (essentially) all the weight.
inline std::uint64_t upper_register_value(const StateVector& s, int n_upper) {
  const std::uint64_t dlow = std::uint64_t{1} << (s.num_qubits - n_upper);
  std::vector<double> w(std::uint64_t{1} << n_upper, 0.0);
  for (std::uint64_t z = 0; z < s.amps.size(); ++z) w[z / dlow] += std::norm(s.amps[z]);
  std::uint64_t best = 0;
  for (std::uint64_t x = 1; x < w.size(); ++x)
    if (w[x] > w[best]) best = x;
  if (w[best] < 1.0 - 1e-9)
    throw std::logic_error("upper register is not a basis state");
  return best;
}

}  // namespace detail

// Constant-or-balanced for 1-bit functions, one oracle call.  The H-U_f-H
// sandwich leaves the upper qubit at |0> exactly when f(0) = f(1).
inline OracleRunStats deutsch(const OracleSpec& f) {
  if (f.n_in != 1 || f.n_out != 1)
    throw std::domain_error("deutsch: needs a 1-bit to 1-bit function");
  const QuantumOracle uf = build_oracle(f);
  StateVector s = tensor_product(basis_state(1, 0), basis_state(1, 1));
  s = run_circuit(hadamard_layer(2), s);
  s = uf(s);
  s = run_circuit(hadamard_layer(2), s);
  OracleRunStats r;
  r.oracle_calls = uf.calls;
  r.result = detail::upper_register_value(s, 1) == 0 ? Classification::kConstant
                                                     : Classification::kBalanced;
  return r;
}

// n-bit extension under the constant-or-balanced promise; behaviour is
// unspecified for functions satisfying neither.
inline OracleRunStats deutsch_jozsa(const OracleSpec& f) {
  if (f.n_out != 1) throw std::domain_error("deutsch_jozsa: output must be one bit");
  const QuantumOracle uf = build_oracle(f);
  const int width = f.n_in + 1;
  StateVector s = tensor_product(basis_state(f.n_in, 0), basis_state(1, 1));
  s = run_circuit(hadamard_layer(width), s);
  s = uf(s);
  s = run_circuit(hadamard_layer(width), s);
  OracleRunStats r;
  r.oracle_calls = uf.calls;
  r.result = detail::upper_register_value(s, f.n_in) == 0 ? Classification::kConstant
                                                          : Classification::kBalanced;
  return r;
}

struct BvResult {
  std::uint64_t a = 0;
  long oracle_calls = 0;
};

// Recovers the hidden string of f(x) = a.x with a single call; the upper
// register holds |a> exactly after the second Hadamard layer.
inline BvResult bernstein_vazirani(std::uint64_t a, int n) {
  if (n < 1 || n > 20) throw std::domain_error("bernstein_vazirani: bad register size");
  std::vector<std::uint64_t> table(std::uint64_t{1} << n);
  for (std::uint64_t x = 0; x < table.size(); ++x)
    table[x] = static_cast<std::uint64_t>(bitwise_dot(a, x));
  const QuantumOracle uf = build_oracle(make_oracle(n, 1, std::move(table)));

  StateVector s = tensor_product(basis_state(n, 0), basis_state(1, 1));
  s = run_circuit(hadamard_layer(n + 1), s);
  s = uf(s);
  s = run_circuit(hadamard_layer(n + 1), s);

  BvResult r;
  r.a = detail::upper_register_value(s, n);
  r.oracle_calls = uf.calls;
  return r;
}

// Gaussian elimination over GF(2).  Rows are n-bit equations row . a = 0;
// returns a basis of the solution space.
inline std::vector<std::uint64_t> gf2_solve(std::vector<std::uint64_t> rows, int n) {
  std::vector<std::uint64_t> basis;
  std::vector<int> pivot_cols;
  std::vector<std::uint64_t> reduced;
  for (std::uint64_t row : rows) {
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (row & (std::uint64_t{1} << pivot_cols[i])) row ^= reduced[i];
    if (row == 0) continue;
    const int col = std::bit_width(row) - 1;
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (reduced[i] & (std::uint64_t{1} << col)) reduced[i] ^= row;
    reduced.push_back(row);
    pivot_cols.push_back(col);
  }
  // free columns parameterize the nullspace
  for (int col = 0; col < n; ++col) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), col) != pivot_cols.end())
      continue;
    std::uint64_t vec = std::uint64_t{1} << col;
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (reduced[i] & (std::uint64_t{1} << col))
        vec |= std::uint64_t{1} << pivot_cols[i];
    basis.push_back(vec);
  }
  return basis;
}

inline int gf2_rank(const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> reduced;
  std::vector<int> pivot_cols;
  for (std::uint64_t row : rows) {
    for (std::size_t i = 0; i < reduced.size(); ++i)
      if (row & (std::uint64_t{1} << pivot_cols[i])) row ^= reduced[i];
    if (row == 0) continue;
    reduced.push_back(row);
    pivot_cols.push_back(std::bit_width(row) - 1);
  }
  return static_cast<int>(reduced.size());
}

struct SimonResult {
  std::uint64_t a = 0;
  long oracle_calls = 0;
  std::vector<std::uint64_t> samples;  // the y values collected
};

// One run of the quantum subroutine: returns a y with y . a = 0, sampled
// uniformly over that subspace.
inline std::uint64_t simon_sample(const QuantumOracle& uf, Rng& rng) {
  const int n = uf.f.n_in;
  const int width = n + uf.f.n_out;
  StateVector s = tensor_product(basis_state(n, 0), basis_state(uf.f.n_out, 0));
  s = run_circuit(embed_upper(hadamard_layer(n), width), s);
  s = uf(s);
  std::vector<int> lower(uf.f.n_out);
  for (int q = 0; q < uf.f.n_out; ++q) lower[q] = n + q;
  s = measure_subset(s, lower, rng).post_state;
  s = run_circuit(embed_upper(hadamard_layer(n), width), s);
  std::vector<int> upper(n);
  for (int q = 0; q < n; ++q) upper[q] = q;
  return measure_subset(s, upper, rng).bits;
}

// Collects equations until they determine a single nonzero candidate, capped
// at n + 20 runs, then checks the promise f(0) = f(a).
inline SimonResult simon(const OracleSpec& f, Rng& rng) {
  const int n = f.n_in;
  if (n < 1) throw std::domain_error("simon: empty input register");
  const QuantumOracle uf = build_oracle(f);

  SimonResult res;
  const int cap = n + 20;
  for (int run = 0; run < cap; ++run) {
    const std::uint64_t y = simon_sample(uf, rng);
    res.samples.push_back(y);
    if (gf2_rank(res.samples) == n - 1) break;
  }
  res.oracle_calls = uf.calls;
  if (gf2_rank(res.samples) < n - 1)
    throw std::runtime_error("simon: run budget exhausted before the system closed");

  std::uint64_t a = 0;
  for (std::uint64_t v : gf2_solve(res.samples, n))
    if (v != 0) a = v;
  if (a == 0 || f.table[0] != f.table[a])
    throw std::runtime_error("simon: recovered candidate violates the promise");
  res.a = a;
  return res;
}

}  // namespace qsim
