#pragma once

#include <map>
#include <string>

#include "qsim/measure.hpp"
#include "qsim/numtheory.hpp"

namespace qsim {

// Signed tensor product of single-qubit Pauli letters.  The letter 'Y' is
// realized by the true Y matrix when applied to states; error corrections are
// therefore exact up to a global phase (Y applied to an iY-corrupted state
// leaves a factor i behind).
struct PauliString {
  int n = 0;
  std::vector<char> letters;  // 'I', 'X', 'Y', 'Z'

  std::string str() const { return std::string(letters.begin(), letters.end()); }
};

inline PauliString pauli_identity(int n) {
  PauliString p;
  p.n = n;
  p.letters.assign(n, 'I');
  return p;
}

// Single letter at a 1-based qubit label, matching the usual code tables
// (qubit 1 is the leftmost / most significant position).
inline PauliString single_pauli(int n, char letter, int label) {
  if (label < 1 || label > n) throw std::domain_error("single_pauli: label out of range");
  PauliString p = pauli_identity(n);
  p.letters[label - 1] = letter;
  return p;
}

// Accepts a full letter string ("IZZXI"), a letter with a 1-based label
// ("Y4"), or "I"/"none".
inline PauliString parse_pauli(int n, const std::string& text) {
  if (text == "I" || text == "none") return pauli_identity(n);
  const bool all_letters =
      static_cast<int>(text.size()) == n &&
      std::all_of(text.begin(), text.end(), [](char c) {
        return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
      });
  if (all_letters) {
    PauliString p;
    p.n = n;
    p.letters.assign(text.begin(), text.end());
    return p;
  }
  if (text.size() >= 2 && (text[0] == 'X' || text[0] == 'Y' || text[0] == 'Z')) {
    const int label = std::stoi(text.substr(1));
    return single_pauli(n, text[0], label);
  }
  throw std::domain_error("parse_pauli: cannot read '" + text + "'");
}

// +1 when P and Q commute, -1 when they anticommute: a minus sign appears for
// every qubit where both act with different non-identity letters.
inline int pauli_commute_sign(const PauliString& p, const PauliString& q) {
  if (p.n != q.n) throw std::domain_error("pauli_commute_sign: length mismatch");
  int sign = 1;
  for (int i = 0; i < p.n; ++i) {
    const char a = p.letters[i], b = q.letters[i];
    if (a != 'I' && b != 'I' && a != b) sign = -sign;
  }
  return sign;
}

inline StateVector pauli_apply(const StateVector& s, const PauliString& p) {
  if (p.n != s.num_qubits) throw std::domain_error("pauli_apply: width mismatch");
  StateVector r = s;
  for (int q = 0; q < p.n; ++q) {
    if (p.letters[q] == 'I') continue;
    const Gate g = standard_gate(std::string(1, p.letters[q]));
    detail::apply_inplace(r.amps, r.num_qubits, GateOp{g, {q}});
  }
  return r;
}

// Sign pattern of the stabilizers for one correctable error; +1 stored as +1.
using Syndrome = std::vector<int>;

inline std::string syndrome_str(const Syndrome& s) {
  std::string out;
  for (int v : s) out += (v > 0 ? '+' : '-');
  return out;
}

struct SyndromeEntry {
  PauliString error;
  Syndrome signs;
};

struct StabilizerCode {
  std::string name;
  int n_physical = 0;
  StateVector logical_zero, logical_one;
  std::vector<PauliString> stabilizers;
  std::vector<SyndromeEntry> table;  // identity first, then the correctable set
};

namespace detail {

inline PauliString pauli_from_labels(int n, const std::string& letters,
                                     std::initializer_list<int> labels) {
  PauliString p = pauli_identity(n);
  std::size_t k = 0;
  for (int label : labels) p.letters[label - 1] = letters[k++];
  return p;
}

// (1 + M) applied as matrices; projector products build codewords directly.
inline StateVector one_plus(const StateVector& s, const PauliString& m) {
  const StateVector ms = pauli_apply(s, m);
  StateVector r = s;
  for (std::uint64_t x = 0; x < r.amps.size(); ++x) r.amps[x] += ms.amps[x];
  return r;
}

inline void fill_table(StabilizerCode& code, const std::vector<PauliString>& errors) {
  code.table.clear();
  code.table.push_back({pauli_identity(code.n_physical),
                        Syndrome(code.stabilizers.size(), 1)});
  for (const PauliString& e : errors) {
    Syndrome signs;
    for (const PauliString& m : code.stabilizers)
      signs.push_back(pauli_commute_sign(m, e));
    code.table.push_back({e, signs});
  }
}

}  // namespace detail

inline StabilizerCode code(const std::string& name) {
  using detail::pauli_from_labels;
  StabilizerCode c;
  c.name = name;

  if (name == "BITFLIP3") {
    c.n_physical = 3;
    c.logical_zero = basis_state(3, 0);
    c.logical_one = basis_state(3, 7);
    c.stabilizers = {pauli_from_labels(3, "ZZ", {1, 2}),
                     pauli_from_labels(3, "ZZ", {2, 3})};
    std::vector<PauliString> errors;
    for (int q = 1; q <= 3; ++q) errors.push_back(single_pauli(3, 'X', q));
    detail::fill_table(c, errors);
    return c;
  }

  if (name == "PHASEFLIP3") {
    c.n_physical = 3;
    StateVector plus = run_circuit(hadamard_layer(3), basis_state(3, 0));
    StateVector minus = run_circuit(hadamard_layer(3), basis_state(3, 7));
    c.logical_zero = std::move(plus);   // |+++>
    c.logical_one = std::move(minus);   // |--->
    c.stabilizers = {pauli_from_labels(3, "XX", {1, 2}),
                     pauli_from_labels(3, "XX", {2, 3})};
    std::vector<PauliString> errors;
    for (int q = 1; q <= 3; ++q) errors.push_back(single_pauli(3, 'Z', q));
    detail::fill_table(c, errors);
    return c;
  }

  if (name == "SHOR9") {
    c.n_physical = 9;
    const double f = 1.0 / std::sqrt(2.0);
    StateVector block_plus = make_state(3, {{f, 0}, {0, 0}, {0, 0}, {0, 0},
                                            {0, 0}, {0, 0}, {0, 0}, {f, 0}});
    StateVector block_minus = make_state(3, {{f, 0}, {0, 0}, {0, 0}, {0, 0},
                                             {0, 0}, {0, 0}, {0, 0}, {-f, 0}});
    c.logical_zero = tensor_product(tensor_product(block_plus, block_plus), block_plus);
    c.logical_one =
        tensor_product(tensor_product(block_minus, block_minus), block_minus);
    c.stabilizers = {pauli_from_labels(9, "ZZ", {1, 2}),
                     pauli_from_labels(9, "ZZ", {2, 3}),
                     pauli_from_labels(9, "ZZ", {4, 5}),
                     pauli_from_labels(9, "ZZ", {5, 6}),
                     pauli_from_labels(9, "ZZ", {7, 8}),
                     pauli_from_labels(9, "ZZ", {8, 9}),
                     pauli_from_labels(9, "XXXXXX", {1, 2, 3, 4, 5, 6}),
                     pauli_from_labels(9, "XXXXXX", {4, 5, 6, 7, 8, 9})};
    std::vector<PauliString> errors;
    for (int q = 1; q <= 9; ++q) errors.push_back(single_pauli(9, 'X', q));
    for (int q = 1; q <= 9; ++q) errors.push_back(single_pauli(9, 'Y', q));
    for (int q : {1, 4, 7}) errors.push_back(single_pauli(9, 'Z', q));
    detail::fill_table(c, errors);
    return c;
  }

  if (name == "FIVE") {
    c.n_physical = 5;
    c.stabilizers = {pauli_from_labels(5, "ZXXZ", {2, 3, 4, 5}),
                     pauli_from_labels(5, "ZXXZ", {3, 4, 5, 1}),
                     pauli_from_labels(5, "ZXXZ", {4, 5, 1, 2}),
                     pauli_from_labels(5, "ZXXZ", {5, 1, 2, 3})};
    StateVector zero = basis_state(5, 0);
    StateVector one = basis_state(5, 31);
    for (const PauliString& m : c.stabilizers) {
      zero = detail::one_plus(zero, m);
      one = detail::one_plus(one, m);
    }
    for (auto& a : zero.amps) a *= 0.25;
    for (auto& a : one.amps) a *= 0.25;
    c.logical_zero = std::move(zero);
    c.logical_one = std::move(one);
    std::vector<PauliString> errors;
    for (char letter : {'X', 'Y', 'Z'})
      for (int q = 1; q <= 5; ++q) errors.push_back(single_pauli(5, letter, q));
    detail::fill_table(c, errors);
    return c;
  }

  if (name == "STEANE7") {
    c.n_physical = 7;
    const std::vector<PauliString> x_stabs = {
        pauli_from_labels(7, "XXXX", {1, 5, 6, 7}),
        pauli_from_labels(7, "XXXX", {2, 4, 6, 7}),
        pauli_from_labels(7, "XXXX", {3, 4, 5, 7})};
    const std::vector<PauliString> z_stabs = {
        pauli_from_labels(7, "ZZZZ", {1, 5, 6, 7}),
        pauli_from_labels(7, "ZZZZ", {2, 4, 6, 7}),
        pauli_from_labels(7, "ZZZZ", {3, 4, 5, 7})};
    c.stabilizers = x_stabs;
    c.stabilizers.insert(c.stabilizers.end(), z_stabs.begin(), z_stabs.end());

    StateVector zero = basis_state(7, 0);
    StateVector one = basis_state(7, 127);  // X-bar |0...0>
    for (const PauliString& m : x_stabs) {
      zero = detail::one_plus(zero, m);
      one = detail::one_plus(one, m);
    }
    const double scale = 1.0 / std::sqrt(8.0);
    for (auto& a : zero.amps) a *= scale;
    for (auto& a : one.amps) a *= scale;
    c.logical_zero = std::move(zero);
    c.logical_one = std::move(one);
    std::vector<PauliString> errors;
    for (char letter : {'X', 'Y', 'Z'})
      for (int q = 1; q <= 7; ++q) errors.push_back(single_pauli(7, letter, q));
    detail::fill_table(c, errors);
    return c;
  }

  throw std::domain_error("code: unknown name '" + name + "'");
}

// alpha |0-bar> + beta |1-bar>.
inline StateVector encode(const StabilizerCode& c, const StateVector& logical) {
  if (logical.num_qubits != 1) throw std::domain_error("encode: logical input is one qubit");
  StateVector s = c.logical_zero;
  for (std::uint64_t x = 0; x < s.amps.size(); ++x)
    s.amps[x] = logical.amps[0] * c.logical_zero.amps[x] +
                logical.amps[1] * c.logical_one.amps[x];
  return s;
}

// Projection back onto the codeword plane; throws if weight leaked outside it.
inline StateVector decode(const StabilizerCode& c, const StateVector& s) {
  const Amplitude alpha = inner_product(c.logical_zero, s);
  const Amplitude beta = inner_product(c.logical_one, s);
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (n2 < 1.0 - 1e-6)
    throw std::runtime_error("decode: state left the codeword subspace");
  StateVector out;
  out.num_qubits = 1;
  const double scale = 1.0 / std::sqrt(n2);
  out.amps = {alpha * scale, beta * scale};
  return out;
}

// Encoders from the original circuit constructions; equivalence with the
// linear-combination encoder is asserted in the tests.
inline Circuit encoding_circuit(const std::string& name) {
  const Gate cnot = standard_gate("CNOT");
  const Gate h = standard_gate("H");
  Circuit c;
  if (name == "BITFLIP3") {
    c.width = 3;
    c.add(cnot, {0, 1}).add(cnot, {0, 2});
    return c;
  }
  if (name == "PHASEFLIP3") {
    c.width = 3;
    c.add(cnot, {0, 1}).add(cnot, {0, 2}).add(h, {0}).add(h, {1}).add(h, {2});
    return c;
  }
  if (name == "SHOR9") {
    c.width = 9;
    c.add(cnot, {0, 3}).add(cnot, {0, 6});
    c.add(h, {0}).add(h, {3}).add(h, {6});
    c.add(cnot, {0, 1}).add(cnot, {0, 2});
    c.add(cnot, {3, 4}).add(cnot, {3, 5});
    c.add(cnot, {6, 7}).add(cnot, {6, 8});
    return c;
  }
  throw std::domain_error("encoding_circuit: no circuit for '" + name + "'");
}

inline StateVector inject_error(const StateVector& s, const PauliString& p) {
  return pauli_apply(s, p);
}

// Arbitrary 1-qubit map, not necessarily unitary; the result may be
// unnormalized and is renormalized by the next syndrome measurement.
inline StateVector inject_error(const StateVector& s, const Gate& map_1q, int qubit) {
  if (map_1q.arity != 1) throw std::domain_error("inject_error: map must act on one qubit");
  return apply(s, map_1q, {qubit});
}

// The reset channel |0><0| + |0><1| = (1 + X + iY + Z)/2.
inline Gate reset_map() { return make_gate(1, {1, 1, 0, 0}); }

// Projective measurement of every stabilizer in order via (1 +- M)/2,
// renormalizing after each projection; equivalent to the ancilla-coupled
// measurement circuit.
inline std::pair<Syndrome, StateVector> measure_syndrome(const StateVector& s,
                                                         const StabilizerCode& c,
                                                         Rng& rng) {
  if (s.num_qubits != c.n_physical)
    throw std::domain_error("measure_syndrome: state width mismatch");
  StateVector cur = normalize(s);
  Syndrome signs;
  for (const PauliString& m : c.stabilizers) {
    const StateVector ms = pauli_apply(cur, m);
    double p_plus = 0;
    for (std::uint64_t x = 0; x < cur.amps.size(); ++x)
      p_plus += 0.25 * std::norm(cur.amps[x] + ms.amps[x]);
    const int sign = rng.next_double() < p_plus ? +1 : -1;
    const double denom = std::sqrt(sign > 0 ? p_plus : 1.0 - p_plus);
    for (std::uint64_t x = 0; x < cur.amps.size(); ++x)
      cur.amps[x] = 0.5 * (cur.amps[x] + double(sign) * ms.amps[x]) / denom;
    signs.push_back(sign);
  }
  return {signs, cur};
}

// Applies the table entry for the measured signs; the corrected state equals
// the uncorrupted codeword up to a global phase.
inline StateVector correct(const StateVector& s, const StabilizerCode& c,
                           const Syndrome& signs) {
  for (const SyndromeEntry& entry : c.table)
    if (entry.signs == signs) return pauli_apply(s, entry.error);
  throw std::runtime_error("correct: syndrome " + syndrome_str(signs) +
                           " is not correctable for " + c.name);
}

struct LogicalOperatorReport {
  bool x_ok = false;       // product of X letters acts as logical X (Steane)
  bool z_ok = false;       // product of Z letters acts as logical Z (Steane)
  bool h_ok = false;       // transversal Hadamard (Steane only)
  bool swapped = false;    // products act with X and Z exchanged (Shor-9)
};

inline LogicalOperatorReport logical_operator_check(const StabilizerCode& c) {
  if (c.name != "STEANE7" && c.name != "SHOR9")
    throw std::domain_error("logical_operator_check: only STEANE7 and SHOR9");
  LogicalOperatorReport rep;
  PauliString all_x = pauli_identity(c.n_physical);
  PauliString all_z = pauli_identity(c.n_physical);
  for (int q = 0; q < c.n_physical; ++q) {
    all_x.letters[q] = 'X';
    all_z.letters[q] = 'Z';
  }
  const StateVector x0 = pauli_apply(c.logical_zero, all_x);
  const StateVector x1 = pauli_apply(c.logical_one, all_x);
  const StateVector z0 = pauli_apply(c.logical_zero, all_z);
  const StateVector z1 = pauli_apply(c.logical_one, all_z);

  const auto matches = [](const StateVector& got, const StateVector& want, double sign) {
    const Amplitude ip = inner_product(want, got);
    return std::abs(ip - Amplitude{sign, 0}) < 1e-10;
  };

  if (c.name == "STEANE7") {
    rep.x_ok = matches(x0, c.logical_one, 1) && matches(x1, c.logical_zero, 1);
    rep.z_ok = matches(z0, c.logical_zero, 1) && matches(z1, c.logical_one, -1);
    StateVector h0 = c.logical_zero, h1 = c.logical_one;
    const Gate h = standard_gate("H");
    for (int q = 0; q < 7; ++q) {
      detail::apply_inplace(h0.amps, 7, GateOp{h, {q}});
      detail::apply_inplace(h1.amps, 7, GateOp{h, {q}});
    }
    const double f = 1.0 / std::sqrt(2.0);
    StateVector plus = c.logical_zero, minus = c.logical_zero;
    for (std::uint64_t x = 0; x < plus.amps.size(); ++x) {
      plus.amps[x] = f * (c.logical_zero.amps[x] + c.logical_one.amps[x]);
      minus.amps[x] = f * (c.logical_zero.amps[x] - c.logical_one.amps[x]);
    }
    rep.h_ok = matches(h0, plus, 1) && matches(h1, minus, 1);
  } else {
    // Shor-9 curiosity: the letter products act with X and Z exchanged
    rep.swapped = matches(z0, c.logical_one, 1) && matches(z1, c.logical_zero, 1) &&
                  matches(x0, c.logical_zero, 1) && matches(x1, c.logical_one, -1);
  }
  return rep;
}

// Concatenated fault-tolerance arithmetic: l levels of an n_code-qubit code
// take the rate p to c^{-1} (c p)^{2^l} on n_code^l physical qubits.
struct ConcatenationEstimate {
  Rational p;
  Rational c;
  u64 n_code = 0;
  int levels = 0;
};

struct ConcatenationResult {
  Rational error_rate;
  u64 qubit_count = 0;
};

inline ConcatenationResult ft_concatenation(const ConcatenationEstimate& est) {
  if (est.levels < 0) throw std::domain_error("ft_concatenation: negative level");
  ConcatenationResult r;
  r.qubit_count = 1;
  for (int i = 0; i < est.levels; ++i) r.qubit_count *= est.n_code;
  if (est.levels == 0) {
    r.error_rate = est.p;
    return r;
  }
  Rational cp = est.c * est.p;
  for (int i = 0; i < est.levels; ++i) cp = cp * cp;  // (cp)^{2^l}
  r.error_rate = Rational(cp.num * est.c.den, cp.den * est.c.num);
  return r;
}

}  // namespace qsim
