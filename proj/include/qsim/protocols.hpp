#pragma once

#include <ostream>
#include <sstream>

#include "qsim/measure.hpp"

namespace qsim {

// Photon polarizations map onto qubit states: basis 0 (Z) carries |0>/|1>
// (horizontal/vertical), basis 1 (X) carries H|0>/H|1> (the diagonals).

struct PhotonRecord {
  int alice_basis = 0;  // 0 = Z, 1 = X
  int alice_bit = 0;
  int eve_basis = -1;  // -1 when Eve is absent
  int eve_bit = -1;
  int bob_basis = 0;
  int bob_bit = 0;
  bool sifted = false;
};

struct QkdTranscript {
  std::vector<PhotonRecord> photons;
  std::vector<int> sifted_key_alice;
  std::vector<int> sifted_key_bob;
  double disagreement_rate = 0.0;

  double sifted_fraction() const {
    return photons.empty() ? 0.0
                           : double(sifted_key_alice.size()) / double(photons.size());
  }
};

// One photon per line, comma-separated, Eve fields "-" when absent.
inline void write_transcript(const QkdTranscript& t, std::ostream& os) {
  os << "alice_basis,alice_bit,eve_basis,eve_bit,bob_basis,bob_bit,sifted\n";
  for (const PhotonRecord& p : t.photons) {
    os << p.alice_basis << ',' << p.alice_bit << ',';
    if (p.eve_basis < 0)
      os << "-,-,";
    else
      os << p.eve_basis << ',' << p.eve_bit << ',';
    os << p.bob_basis << ',' << p.bob_bit << ',' << (p.sifted ? 1 : 0) << '\n';
  }
}

// JSON-lines variant: one object per photon.
inline void write_transcript_jsonl(const QkdTranscript& t, std::ostream& os) {
  for (const PhotonRecord& p : t.photons) {
    os << "{\"alice_basis\":" << p.alice_basis << ",\"alice_bit\":" << p.alice_bit;
    if (p.eve_basis >= 0)
      os << ",\"eve_basis\":" << p.eve_basis << ",\"eve_bit\":" << p.eve_bit;
    os << ",\"bob_basis\":" << p.bob_basis << ",\"bob_bit\":" << p.bob_bit
       << ",\"sifted\":" << (p.sifted ? "true" : "false") << "}\n";
  }
}

namespace detail {

// Measure a photon in basis 0 (Z) or 1 (X): rotate with H for the X basis,
// read Z, and forward the post-measurement state.
inline int measure_in_basis(StateVector& photon, int basis, Rng& rng) {
  const Gate h = standard_gate("H");
  if (basis == 1) photon = apply(photon, h, {0});
  const MeasurementResult m = measure_all(photon, rng);
  photon = m.post_state;
  if (basis == 1) photon = apply(photon, h, {0});
  return static_cast<int>(m.bits);
}

inline StateVector encode_photon(int basis, int bit) {
  StateVector s = basis_state(1, static_cast<std::uint64_t>(bit));
  if (basis == 1) s = apply(s, standard_gate("H"), {0});
  return s;
}

}  // namespace detail

// Intercept-resend eavesdropping flips about a quarter of the sifted bits;
// without Eve the sifted keys agree exactly.
inline QkdTranscript bb84(long n_photons, bool eve_present, Rng& rng) {
  if (n_photons < 1) throw std::domain_error("bb84: need at least one photon");
  QkdTranscript t;
  t.photons.reserve(n_photons);
  long disagreements = 0;
  for (long i = 0; i < n_photons; ++i) {
    PhotonRecord rec;
    rec.alice_basis = rng.next_bit();
    rec.alice_bit = rng.next_bit();
    StateVector photon = detail::encode_photon(rec.alice_basis, rec.alice_bit);
    if (eve_present) {
      rec.eve_basis = rng.next_bit();
      rec.eve_bit = detail::measure_in_basis(photon, rec.eve_basis, rng);
    }
    rec.bob_basis = rng.next_bit();
    rec.bob_bit = detail::measure_in_basis(photon, rec.bob_basis, rng);
    rec.sifted = rec.alice_basis == rec.bob_basis;
    if (rec.sifted) {
      t.sifted_key_alice.push_back(rec.alice_bit);
      t.sifted_key_bob.push_back(rec.bob_bit);
      if (rec.alice_bit != rec.bob_bit) ++disagreements;
    }
    t.photons.push_back(rec);
  }
  if (!t.sifted_key_alice.empty())
    t.disagreement_rate = double(disagreements) / double(t.sifted_key_alice.size());
  return t;
}

// Two-state protocol: Alice sends |0> or H|0> for key bit k; Bob keeps the
// photons where he measured 1, which only happens when their bases differ,
// and his basis bit is the key.  Alice's key is the complement of her bits.
inline QkdTranscript b92(long n_photons, bool eve_present, Rng& rng) {
  if (n_photons < 1) throw std::domain_error("b92: need at least one photon");
  QkdTranscript t;
  t.photons.reserve(n_photons);
  long disagreements = 0;
  for (long i = 0; i < n_photons; ++i) {
    PhotonRecord rec;
    rec.alice_bit = rng.next_bit();   // k
    rec.alice_basis = rec.alice_bit;  // state is |0> in basis k
    StateVector photon = detail::encode_photon(rec.alice_basis, 0);
    if (eve_present) {
      rec.eve_basis = rng.next_bit();
      rec.eve_bit = detail::measure_in_basis(photon, rec.eve_basis, rng);
    }
    rec.bob_basis = rng.next_bit();  // l
    rec.bob_bit = detail::measure_in_basis(photon, rec.bob_basis, rng);
    rec.sifted = rec.bob_bit == 1;  // kept only when Bob reads 1
    if (rec.sifted) {
      t.sifted_key_alice.push_back(1 - rec.alice_bit);
      t.sifted_key_bob.push_back(rec.bob_basis);
      if (t.sifted_key_alice.back() != t.sifted_key_bob.back()) ++disagreements;
    }
    t.photons.push_back(rec);
  }
  if (!t.sifted_key_alice.empty())
    t.disagreement_rate = double(disagreements) / double(t.sifted_key_alice.size());
  return t;
}

struct TeleportResult {
  int x = 0;  // Hadamarded wire
  int y = 0;
  StateVector bob_state;  // after correction, equals the input up to phase
  StateVector full_post;  // all three wires right after Alice's measurement
};

// Bell measurement on Alice's pair, classical bits to Bob, then X^y Z^x.
inline TeleportResult teleport(const StateVector& psi, Rng& rng) {
  if (psi.num_qubits != 1) throw std::domain_error("teleport: input is one qubit");
  const double f = 1.0 / std::sqrt(2.0);
  const StateVector bell = make_state(2, {{f, 0}, {0, 0}, {0, 0}, {f, 0}});
  StateVector s = tensor_product(psi, bell);  // wires: psi, Alice, Bob
  s = apply(s, standard_gate("CNOT"), {0, 1});
  s = apply(s, standard_gate("H"), {0});
  const MeasurementResult m = measure_subset(s, {0, 1}, rng);

  TeleportResult out;
  out.x = static_cast<int>((m.bits >> 1) & 1);
  out.y = static_cast<int>(m.bits & 1);
  out.full_post = m.post_state;

  // Bob's wire is the low bit; extract his conditional state
  out.bob_state.num_qubits = 1;
  out.bob_state.amps = {m.post_state.amps[m.bits << 1],
                        m.post_state.amps[(m.bits << 1) | 1]};
  if (out.y) out.bob_state = apply(out.bob_state, standard_gate("X"), {0});
  if (out.x) out.bob_state = apply(out.bob_state, standard_gate("Z"), {0});
  return out;
}

}  // namespace qsim
