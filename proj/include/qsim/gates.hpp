#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "qsim/state.hpp"

namespace qsim {

// A k-qubit gate is a dense 2^k x 2^k matrix, row-major.  Row/column indices
// follow the register convention: gate qubit 0 is the most significant bit of
// the matrix index.  Every gate produced by the builders below is unitary;
// apply() itself accepts any matrix (error channels reuse it).
struct Gate {
  int arity = 1;
  std::vector<Amplitude> m;  // dim*dim entries

  std::uint64_t dim() const { return std::uint64_t{1} << arity; }
  Amplitude& at(std::uint64_t r, std::uint64_t c) { return m[r * dim() + c]; }
  const Amplitude& at(std::uint64_t r, std::uint64_t c) const { return m[r * dim() + c]; }
};

inline Gate make_gate(int arity, std::vector<Amplitude> entries) {
  Gate g;
  g.arity = arity;
  const std::uint64_t d = std::uint64_t{1} << arity;
  if (entries.size() != d * d) throw std::domain_error("make_gate: bad matrix size");
  g.m = std::move(entries);
  return g;
}

inline Gate matmul(const Gate& a, const Gate& b) {
  if (a.arity != b.arity) throw std::domain_error("matmul: arity mismatch");
  const std::uint64_t d = a.dim();
  Gate r;
  r.arity = a.arity;
  r.m.assign(d * d, Amplitude{0, 0});
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t k = 0; k < d; ++k) {
      const Amplitude aik = a.m[i * d + k];
      if (aik == Amplitude{0, 0}) continue;
      for (std::uint64_t j = 0; j < d; ++j) r.m[i * d + j] += aik * b.m[k * d + j];
    }
  return r;
}

inline Gate adjoint(const Gate& g) {
  const std::uint64_t d = g.dim();
  Gate r;
  r.arity = g.arity;
  r.m.resize(d * d);
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j) r.m[j * d + i] = std::conj(g.m[i * d + j]);
  return r;
}

inline Gate gate_tensor(const Gate& a, const Gate& b) {
  Gate r;
  r.arity = a.arity + b.arity;
  const std::uint64_t da = a.dim(), db = b.dim(), d = da * db;
  r.m.assign(d * d, Amplitude{0, 0});
  for (std::uint64_t i = 0; i < da; ++i)
    for (std::uint64_t j = 0; j < da; ++j)
      for (std::uint64_t k = 0; k < db; ++k)
        for (std::uint64_t l = 0; l < db; ++l)
          r.m[(i * db + k) * d + (j * db + l)] = a.at(i, j) * b.at(k, l);
  return r;
}

inline bool is_unitary(const Gate& g, double tol = kTol) {
  const Gate p = matmul(adjoint(g), g);
  const std::uint64_t d = g.dim();
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j) {
      const Amplitude want = (i == j) ? Amplitude{1, 0} : Amplitude{0, 0};
      if (std::abs(p.m[i * d + j] - want) > tol) return false;
    }
  return true;
}

inline bool is_hermitian(const Gate& g, double tol = kTol) {
  const std::uint64_t d = g.dim();
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j)
      if (std::abs(g.m[i * d + j] - std::conj(g.m[j * d + i])) > tol) return false;
  return true;
}

// Phase gate: diag(1, e^{i pi / 2^d}).  d = 0 is Z; negative d gives the
// conjugate gate diag(1, e^{-i pi / 2^|d|}) used by the inverse transform.
inline Gate phase_gate(int d) {
  const double mag = std::numbers::pi / static_cast<double>(std::uint64_t{1} << std::abs(d));
  const double ang = d < 0 ? -mag : mag;
  return make_gate(1, {1, 0, 0, std::polar(1.0, ang)});
}

// Block-diagonal [[1,0],[0,g]]; the control is the new most significant qubit.
inline Gate controlled(const Gate& g) {
  const std::uint64_t d = g.dim();
  Gate r;
  r.arity = g.arity + 1;
  r.m.assign(4 * d * d, Amplitude{0, 0});
  for (std::uint64_t i = 0; i < d; ++i) r.m[i * 2 * d + i] = Amplitude{1, 0};
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j) r.m[(d + i) * 2 * d + (d + j)] = g.at(i, j);
  return r;
}

// Names: I, X, Y, Z, H, CNOT, CZ, SWAP, TOFFOLI, and R_d / R_-d with a decimal
// d appended (e.g. "R_1", "R_-3").
inline Gate standard_gate(std::string_view name) {
  const double s = 1.0 / std::sqrt(2.0);
  const Amplitude i1{0, 1};
  if (name == "I") return make_gate(1, {1, 0, 0, 1});
  if (name == "X") return make_gate(1, {0, 1, 1, 0});
  if (name == "Y") return make_gate(1, {0, -i1, i1, 0});
  if (name == "Z") return make_gate(1, {1, 0, 0, -1});
  if (name == "H") return make_gate(1, {s, s, s, -s});
  if (name == "CNOT")
    return make_gate(2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
  if (name == "CZ")
    return make_gate(2, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
  if (name == "SWAP")
    return make_gate(2, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  if (name == "TOFFOLI") {
    Gate g = make_gate(3, std::vector<Amplitude>(64, Amplitude{0, 0}));
    for (std::uint64_t k = 0; k < 6; ++k) g.at(k, k) = 1;
    g.at(6, 7) = 1;
    g.at(7, 6) = 1;
    return g;
  }
  if (name.substr(0, 2) == "R_") {
    try {
      return phase_gate(std::stoi(std::string(name.substr(2))));
    } catch (const std::exception&) {
    }
  }
  throw std::domain_error("standard_gate: unknown name '" + std::string(name) + "'");
}

// One gate application: targets are distinct qubit positions, one per gate
// qubit, controls (if any) listed first.
struct GateOp {
  Gate gate;
  std::vector<int> targets;
};

struct Circuit {
  int width = 0;
  std::vector<GateOp> ops;

  Circuit& add(Gate g, std::vector<int> targets) {
    ops.push_back(GateOp{std::move(g), std::move(targets)});
    return *this;
  }
};

namespace detail {

// 1-qubit fast path: amplitude pairs stride 2^{n-1-q} apart.
inline void apply_1q_inplace(std::vector<Amplitude>& amps, int num_qubits,
                             const Gate& g, int q) {
  const std::uint64_t stride = std::uint64_t{1} << (num_qubits - 1 - q);
  const std::uint64_t block = stride << 1;
  const Amplitude m00 = g.m[0], m01 = g.m[1], m10 = g.m[2], m11 = g.m[3];
  const std::uint64_t n = amps.size();
  for (std::uint64_t base = 0; base < n; base += block)
    for (std::uint64_t off = 0; off < stride; ++off) {
      const std::uint64_t i0 = base + off;
      const std::uint64_t i1 = i0 + stride;
      const Amplitude a = amps[i0], b = amps[i1];
      amps[i0] = m00 * a + m01 * b;
      amps[i1] = m10 * a + m11 * b;
    }
}

// General k-qubit path: gather the 2^k amplitudes addressed by the target
// bits, multiply by the matrix, scatter back.
inline void apply_kq_inplace(std::vector<Amplitude>& amps, int num_qubits,
                             const Gate& g, const std::vector<int>& targets) {
  const int k = g.arity;
  const std::uint64_t d = g.dim();
  std::vector<std::uint64_t> bit(k);
  std::uint64_t target_mask = 0;
  for (int t = 0; t < k; ++t) {
    bit[t] = std::uint64_t{1} << (num_qubits - 1 - targets[t]);
    target_mask |= bit[t];
  }
  std::vector<Amplitude> in(d), out(d);
  const std::uint64_t n = amps.size();
  for (std::uint64_t base = 0; base < n; ++base) {
    if (base & target_mask) continue;  // enumerate each group once
    for (std::uint64_t r = 0; r < d; ++r) {
      std::uint64_t idx = base;
      for (int t = 0; t < k; ++t)
        if (r & (std::uint64_t{1} << (k - 1 - t))) idx |= bit[t];
      in[r] = amps[idx];
    }
    for (std::uint64_t r = 0; r < d; ++r) {
      Amplitude acc{0, 0};
      for (std::uint64_t c = 0; c < d; ++c) acc += g.m[r * d + c] * in[c];
      out[r] = acc;
    }
    for (std::uint64_t r = 0; r < d; ++r) {
      std::uint64_t idx = base;
      for (int t = 0; t < k; ++t)
        if (r & (std::uint64_t{1} << (k - 1 - t))) idx |= bit[t];
      amps[idx] = out[r];
    }
  }
}

inline void apply_inplace(std::vector<Amplitude>& amps, int num_qubits,
                          const GateOp& op) {
  if (static_cast<int>(op.targets.size()) != op.gate.arity)
    throw std::domain_error("apply: target count must equal gate arity");
  std::uint64_t seen = 0;
  for (int t : op.targets) {
    if (t < 0 || t >= num_qubits) throw std::domain_error("apply: target out of range");
    const std::uint64_t b = std::uint64_t{1} << t;
    if (seen & b) throw std::domain_error("apply: duplicate target");
    seen |= b;
  }
  if (op.gate.arity == 1)
    apply_1q_inplace(amps, num_qubits, op.gate, op.targets[0]);
  else
    apply_kq_inplace(amps, num_qubits, op.gate, op.targets);
}

}  // namespace detail

inline StateVector apply(const StateVector& s, const GateOp& op) {
  StateVector r = s;
  detail::apply_inplace(r.amps, r.num_qubits, op);
  return r;
}

inline StateVector apply(const StateVector& s, const Gate& g, std::vector<int> targets) {
  return apply(s, GateOp{g, std::move(targets)});
}

inline StateVector run_circuit(const Circuit& c, const StateVector& s) {
  if (c.width != s.num_qubits) throw std::domain_error("run_circuit: width mismatch");
  StateVector r = s;
  for (const GateOp& op : c.ops) detail::apply_inplace(r.amps, r.num_qubits, op);
  return r;
}

inline Circuit hadamard_layer(int n) {
  Circuit c;
  c.width = n;
  const Gate h = standard_gate("H");
  for (int q = 0; q < n; ++q) c.add(h, {q});
  return c;
}

// Same ops on the top wires of a wider register.
inline Circuit embed_upper(Circuit c, int width) {
  if (width < c.width) throw std::domain_error("embed_upper: register too narrow");
  c.width = width;
  return c;
}

// Fourier transform circuit on the amplitude index: with the final swaps the
// circuit unitary is the DFT matrix (1/sqrt(2^n)) w^{xy}, w = e^{2 pi i/2^n}.
// The controlled phase between qubits i and j is R_{|i-j|}.  d_max > 0 drops
// phase gates with d > d_max (small-angle truncation); 0 keeps all of them.
inline Circuit qft_circuit(int n, bool include_swaps, int d_max = 0) {
  if (n < 1) throw std::domain_error("qft_circuit: need at least one qubit");
  Circuit c;
  c.width = n;
  const Gate h = standard_gate("H");
  for (int j = 0; j < n; ++j) {
    c.add(h, {j});
    for (int k = j + 1; k < n; ++k) {
      const int d = k - j;
      if (d_max > 0 && d > d_max) continue;
      c.add(controlled(phase_gate(d)), {k, j});
    }
  }
  if (include_swaps) {
    const Gate sw = standard_gate("SWAP");
    for (int q = 0; q < n / 2; ++q) c.add(sw, {q, n - 1 - q});
  }
  return c;
}

// Exact reverse of qft_circuit with conjugated phases.
inline Circuit inverse_qft_circuit(int n, bool include_swaps, int d_max = 0) {
  if (n < 1) throw std::domain_error("inverse_qft_circuit: need at least one qubit");
  Circuit c;
  c.width = n;
  if (include_swaps) {
    const Gate sw = standard_gate("SWAP");
    for (int q = n / 2 - 1; q >= 0; --q) c.add(sw, {q, n - 1 - q});
  }
  const Gate h = standard_gate("H");
  for (int j = n - 1; j >= 0; --j) {
    for (int k = n - 1; k > j; --k) {
      const int d = k - j;
      if (d_max > 0 && d > d_max) continue;
      c.add(controlled(phase_gate(-d)), {k, j});
    }
    c.add(h, {j});
  }
  return c;
}

// sqrt-of-X construction: V^2 = X, so controlled-V / CNOT / controlled-V^dag
// realize the doubly controlled NOT with 1- and 2-qubit gates only.
inline Gate sqrt_x_gate() {
  const Amplitude p{0.5, 0.5}, q{0.5, -0.5};  // (1-i)(1+iX)/2
  return make_gate(1, {q, p, p, q});
}

inline Circuit toffoli_decomposed() {
  Circuit c;
  c.width = 3;
  const Gate v = sqrt_x_gate();
  const Gate cnot = standard_gate("CNOT");
  c.add(controlled(v), {1, 2});
  c.add(cnot, {0, 1});
  c.add(controlled(adjoint(v)), {1, 2});
  c.add(cnot, {0, 1});
  c.add(controlled(v), {0, 2});
  return c;
}

// Dense unitary of a circuit, by running every basis state through it.
inline Gate circuit_unitary(const Circuit& c) {
  const std::uint64_t d = std::uint64_t{1} << c.width;
  Gate g;
  g.arity = c.width;
  g.m.assign(d * d, Amplitude{0, 0});
  for (std::uint64_t col = 0; col < d; ++col) {
    const StateVector out = run_circuit(c, basis_state(c.width, col));
    for (std::uint64_t row = 0; row < d; ++row) g.m[row * d + col] = out.amps[row];
  }
  return g;
}

}  // namespace qsim
