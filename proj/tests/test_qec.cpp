#include "qsim/qec.hpp"

#include "helpers.hpp"

using namespace qsim;
using qsim::test::check_close;
using qsim::test::random_state;

namespace {

const std::vector<std::string> kAllCodes = {"BITFLIP3", "PHASEFLIP3", "SHOR9",
                                            "FIVE", "STEANE7"};

Gate pauli_matrix(const PauliString& p) {
  Gate g = standard_gate(std::string(1, p.letters[0]));
  for (int q = 1; q < p.n; ++q)
    g = gate_tensor(g, standard_gate(std::string(1, p.letters[q])));
  return g;
}

}  // namespace

TEST_CASE("pauli_commute_sign") {
  REQUIRE(pauli_commute_sign(parse_pauli(3, "IZZ"), parse_pauli(3, "IXI")) == -1);
  REQUIRE(pauli_commute_sign(parse_pauli(3, "IZZ"), parse_pauli(3, "XII")) == +1);
  // Z1 Z3 X4 X5 vs Z4: one mixed overlap on qubit 4
  REQUIRE(pauli_commute_sign(parse_pauli(5, "ZIZXX"), single_pauli(5, 'Z', 4)) == -1);
  REQUIRE(pauli_commute_sign(parse_pauli(5, "ZIZXX"), single_pauli(5, 'X', 4)) == +1);
  REQUIRE(pauli_commute_sign(parse_pauli(5, "ZIZXX"), single_pauli(5, 'X', 2)) == +1);
  REQUIRE_THROWS_AS(pauli_commute_sign(pauli_identity(2), pauli_identity(3)),
                    std::domain_error);
}

TEST_CASE("code invariants for every code") {
  for (const std::string& name : kAllCodes) {
    const StabilizerCode c = code(name);
    INFO(name);
    REQUIRE(is_normalized(c.logical_zero));
    REQUIRE(is_normalized(c.logical_one));
    REQUIRE(std::abs(inner_product(c.logical_zero, c.logical_one)) < 1e-10);

    for (std::size_t i = 0; i < c.stabilizers.size(); ++i) {
      // squares to the identity as a matrix
      const Gate m = pauli_matrix(c.stabilizers[i]);
      const Gate m2 = matmul(m, m);
      for (std::uint64_t r = 0; r < m.dim(); ++r)
        for (std::uint64_t cc = 0; cc < m.dim(); ++cc) {
          const Amplitude want = r == cc ? Amplitude{1, 0} : Amplitude{0, 0};
          REQUIRE(std::abs(m2.at(r, cc) - want) < 1e-12);
        }
      // mutually commuting
      for (std::size_t j = i + 1; j < c.stabilizers.size(); ++j)
        REQUIRE(pauli_commute_sign(c.stabilizers[i], c.stabilizers[j]) == +1);
      // fixes both codewords with eigenvalue +1
      check_close(pauli_apply(c.logical_zero, c.stabilizers[i]), c.logical_zero, 1e-10);
      check_close(pauli_apply(c.logical_one, c.stabilizers[i]), c.logical_one, 1e-10);
    }

    // table rows pairwise distinct
    for (std::size_t i = 0; i < c.table.size(); ++i)
      for (std::size_t j = i + 1; j < c.table.size(); ++j)
        REQUIRE(c.table[i].signs != c.table[j].signs);
  }
}

TEST_CASE("five-qubit codewords live on even/odd weight basis states") {
  const StabilizerCode c = code("FIVE");
  int support0 = 0, support1 = 0;
  for (std::uint64_t x = 0; x < 32; ++x) {
    if (std::abs(c.logical_zero.amps[x]) > 1e-12) {
      ++support0;
      REQUIRE(std::popcount(x) % 2 == 0);
    }
    if (std::abs(c.logical_one.amps[x]) > 1e-12) {
      ++support1;
      REQUIRE(std::popcount(x) % 2 == 1);
    }
  }
  REQUIRE(support0 == 16);
  REQUIRE(support1 == 16);
}

TEST_CASE("encode") {
  const StabilizerCode shor = code("SHOR9");
  // |0> encodes to the triple block (|000>+|111>)^(x3)/2^{3/2}
  const StateVector z = encode(shor, basis_state(1, 0));
  const double w = std::pow(2.0, -1.5);
  for (std::uint64_t x = 0; x < 512; ++x) {
    const bool in_support = ((x >> 6) == 0 || (x >> 6) == 7) &&
                            (((x >> 3) & 7) == 0 || ((x >> 3) & 7) == 7) &&
                            ((x & 7) == 0 || (x & 7) == 7);
    if (in_support)
      REQUIRE(std::abs(z.amps[x] - Amplitude{w, 0}) < 1e-12);
    else
      REQUIRE(std::abs(z.amps[x]) < 1e-15);
  }

  const StabilizerCode bf = code("BITFLIP3");
  const double s2 = 1.0 / std::sqrt(2.0);
  const StateVector enc = encode(bf, make_state(1, {{s2, 0}, {s2, 0}}));
  REQUIRE(std::abs(enc.amps[0] - Amplitude{s2, 0}) < 1e-12);
  REQUIRE(std::abs(enc.amps[7] - Amplitude{s2, 0}) < 1e-12);

  // encode preserves inner products
  Rng rng(700);
  const StateVector a = random_state(1, rng), b = random_state(1, rng);
  for (const std::string& name : kAllCodes) {
    const StabilizerCode c = code(name);
    const Amplitude want = inner_product(a, b);
    const Amplitude got = inner_product(encode(c, a), encode(c, b));
    REQUIRE(std::abs(want - got) < 1e-10);
  }
}

TEST_CASE("circuit encoders match the direct construction") {
  Rng rng(701);
  for (const std::string& name : {std::string("BITFLIP3"), std::string("PHASEFLIP3"),
                                  std::string("SHOR9")}) {
    const StabilizerCode c = code(name);
    const Circuit circ = encoding_circuit(name);
    const StateVector logical = random_state(1, rng);
    StateVector in = logical;
    for (int q = 1; q < c.n_physical; ++q) in = tensor_product(in, basis_state(1, 0));
    check_close(run_circuit(circ, in), encode(c, logical), 1e-12);
  }
}

TEST_CASE("syndrome tables match the reference sign patterns") {
  const StabilizerCode bf = code("BITFLIP3");
  const std::map<std::string, std::string> bitflip_want = {
      {"III", "++"}, {"XII", "-+"}, {"IXI", "--"}, {"IIX", "+-"}};
  REQUIRE(bf.table.size() == bitflip_want.size());
  for (const auto& e : bf.table)
    REQUIRE(syndrome_str(e.signs) == bitflip_want.at(e.error.str()));

  const StabilizerCode shor = code("SHOR9");
  const std::map<std::string, std::string> shor_want = {
      {"IIIIIIIII", "++++++++"},
      {"XIIIIIIII", "-+++++++"}, {"IXIIIIIII", "--++++++"}, {"IIXIIIIII", "+-++++++"},
      {"IIIXIIIII", "++-+++++"}, {"IIIIXIIII", "++--++++"}, {"IIIIIXIII", "+++-++++"},
      {"IIIIIIXII", "++++-+++"}, {"IIIIIIIXI", "++++--++"}, {"IIIIIIIIX", "+++++-++"},
      {"YIIIIIIII", "-+++++-+"}, {"IYIIIIIII", "--++++-+"}, {"IIYIIIIII", "+-++++-+"},
      {"IIIYIIIII", "++-+++--"}, {"IIIIYIIII", "++--++--"}, {"IIIIIYIII", "+++-++--"},
      {"IIIIIIYII", "++++-++-"}, {"IIIIIIIYI", "++++--+-"}, {"IIIIIIIIY", "+++++-+-"},
      {"ZIIIIIIII", "++++++-+"}, {"IIIZIIIII", "++++++--"}, {"IIIIIIZII", "+++++++-"}};
  REQUIRE(shor.table.size() == shor_want.size());
  for (const auto& e : shor.table)
    REQUIRE(syndrome_str(e.signs) == shor_want.at(e.error.str()));

  // The X4 entry is ++-+: only M3 = Z4 X5 X1 Z2 touches qubit 4 with a
  // different letter, and anything else would collide with the Z1 row.
  const StabilizerCode five = code("FIVE");
  const std::map<std::string, std::string> five_want = {
      {"IIIII", "++++"},
      {"XIIII", "+-++"}, {"IXIII", "-+-+"}, {"IIXII", "+-+-"},
      {"IIIXI", "++-+"}, {"IIIIX", "-++-"},
      {"YIIII", "+---"}, {"IYIII", "-+--"}, {"IIYII", "--+-"},
      {"IIIYI", "---+"}, {"IIIIY", "----"},
      {"ZIIII", "++--"}, {"IZIII", "+++-"}, {"IIZII", "-+++"},
      {"IIIZI", "--++"}, {"IIIIZ", "+--+"}};
  REQUIRE(five.table.size() == 16);
  for (const auto& e : five.table)
    REQUIRE(syndrome_str(e.signs) == five_want.at(e.error.str()));
}

TEST_CASE("table signs agree with direct matrix action on corrupted codewords") {
  Rng rng(702);
  for (const std::string& name : {std::string("BITFLIP3"), std::string("FIVE"),
                                  std::string("STEANE7")}) {
    const StabilizerCode c = code(name);
    const StateVector psi = encode(c, random_state(1, rng));
    for (const SyndromeEntry& entry : c.table) {
      const StateVector corrupted = pauli_apply(psi, entry.error);
      for (std::size_t k = 0; k < c.stabilizers.size(); ++k) {
        const StateVector acted = pauli_apply(corrupted, c.stabilizers[k]);
        // acted = sign * corrupted
        const Amplitude ip = inner_product(corrupted, acted);
        REQUIRE(std::abs(ip - Amplitude{double(entry.signs[k]), 0}) < 1e-10);
      }
    }
  }
  // spot-check six random rows of the Shor-9 table the same way
  const StabilizerCode shor = code("SHOR9");
  const StateVector psi = encode(shor, random_state(1, rng));
  for (int pick = 0; pick < 6; ++pick) {
    const SyndromeEntry& entry = shor.table[1 + rng.next_below(shor.table.size() - 1)];
    const StateVector corrupted = pauli_apply(psi, entry.error);
    for (std::size_t k = 0; k < shor.stabilizers.size(); ++k) {
      const Amplitude ip = inner_product(
          corrupted, pauli_apply(corrupted, shor.stabilizers[k]));
      REQUIRE(std::abs(ip - Amplitude{double(entry.signs[k]), 0}) < 1e-10);
    }
  }
}

TEST_CASE("inject_error") {
  Rng rng(703);
  const StateVector one = random_state(1, rng);
  const StabilizerCode bf = code("BITFLIP3");
  const StateVector enc = encode(bf, one);
  const StateVector flipped = inject_error(enc, single_pauli(3, 'X', 2));
  REQUIRE(std::abs(flipped.amps[2] - one.amps[0]) < 1e-12);  // |010>
  REQUIRE(std::abs(flipped.amps[5] - one.amps[1]) < 1e-12);  // |101>

  check_close(inject_error(enc, pauli_identity(3)), enc, 1e-15);

  // reset on qubit 1 of the Shor-9 codeword: first block becomes |000>+-|011>
  const StabilizerCode shor = code("SHOR9");
  const StateVector psi = encode(shor, one);
  const StateVector reset = inject_error(psi, reset_map(), 0);
  const double w = std::pow(2.0, -1.5);
  // alpha piece: (|000>+|011>)(+)(+), beta piece: (|000>-|011>)(-)(-)
  const Amplitude a = one.amps[0] * w, b = one.amps[1] * w;
  REQUIRE(std::abs(reset.amps[0] - (a + b)) < 1e-12);               // |000 000 000>
  REQUIRE(std::abs(reset.amps[0 + (3 << 6)] - (a - b)) < 1e-12);    // |011 000 000>
  REQUIRE(std::abs(reset.amps[7 | (7 << 3)] - (a + b)) < 1e-12);    // |000 111 111>
  REQUIRE(std::abs(reset.amps[(3 << 6) | 7 | (7 << 3)] - (a - b)) < 1e-12);
}

TEST_CASE("measure_syndrome") {
  Rng rng(704);
  const StabilizerCode bf = code("BITFLIP3");
  const StateVector psi = encode(bf, random_state(1, rng));

  // uncorrupted codeword: all +1, state unchanged
  auto [signs, post] = measure_syndrome(psi, bf, rng);
  REQUIRE(signs == Syndrome{1, 1});
  check_close(post, psi, 1e-12);

  // X2 corruption: (-,-) deterministically
  const StateVector bad = inject_error(psi, single_pauli(3, 'X', 2));
  for (int it = 0; it < 5; ++it) {
    auto [s2, p2] = measure_syndrome(bad, bf, rng);
    REQUIRE(s2 == Syndrome{-1, -1});
    check_close(p2, bad, 1e-12);
  }
}

TEST_CASE("reset error projects onto four equally likely syndromes") {
  Rng rng(705);
  const StabilizerCode shor = code("SHOR9");
  const StateVector psi = encode(shor, random_state(1, rng));
  const StateVector corrupted = inject_error(psi, reset_map(), 0);

  std::map<std::string, int> counts;
  const int shots = 10000;
  for (int i = 0; i < shots; ++i) {
    auto [signs, post] = measure_syndrome(corrupted, shor, rng);
    ++counts[syndrome_str(signs)];
    (void)post;
  }
  REQUIRE(counts.size() == 4);
  REQUIRE(counts.count("++++++++") == 1);  // identity branch
  REQUIRE(counts.count("-+++++++") == 1);  // X1
  REQUIRE(counts.count("-+++++-+") == 1);  // Y1
  REQUIRE(counts.count("++++++-+") == 1);  // Z1
  for (const auto& [pattern, cnt] : counts)
    REQUIRE(std::abs(cnt / double(shots) - 0.25) < 0.02);
}

TEST_CASE("roundtrip restores the logical state for every correctable error") {
  Rng rng(706);
  for (const std::string& name : kAllCodes) {
    const StabilizerCode c = code(name);
    for (const SyndromeEntry& entry : c.table) {
      for (int rep = 0; rep < 4; ++rep) {
        const StateVector logical = random_state(1, rng);
        const StateVector enc = encode(c, logical);
        const StateVector bad = inject_error(enc, entry.error);
        auto [signs, collapsed] = measure_syndrome(bad, c, rng);
        REQUIRE(signs == entry.signs);
        const StateVector fixed = correct(collapsed, c, signs);
        REQUIRE(equal_up_to_global_phase(fixed, enc, 1e-8));
        REQUIRE(equal_up_to_global_phase(decode(c, fixed), logical, 1e-8));
      }
    }
  }
}

TEST_CASE("coherent small-amplitude error is corrected in every branch") {
  Rng rng(707);
  const StabilizerCode bf = code("BITFLIP3");
  const StateVector logical = random_state(1, rng);
  const StateVector psi = encode(bf, logical);
  // 1 + i(eps1 X1 + eps2 X2 + eps3 X3), unnormalized on purpose; the
  // amplitudes are sized so every branch shows up within the shot budget
  StateVector corrupted = psi;
  const double eps[3] = {0.3, 0.4, 0.35};
  for (int q = 0; q < 3; ++q) {
    const StateVector flipped = pauli_apply(psi, single_pauli(3, 'X', q + 1));
    for (std::uint64_t x = 0; x < 8; ++x)
      corrupted.amps[x] += Amplitude{0, eps[q]} * flipped.amps[x];
  }
  std::set<std::string> seen;
  for (int it = 0; it < 400; ++it) {
    auto [signs, post] = measure_syndrome(corrupted, bf, rng);
    seen.insert(syndrome_str(signs));
    const StateVector fixed = correct(post, bf, signs);
    REQUIRE(equal_up_to_global_phase(fixed, psi, 1e-8));
  }
  REQUIRE(seen.size() == 4);  // every branch observed
}

TEST_CASE("incoherent Pauli noise is corrected in every branch") {
  Rng rng(708);
  const StabilizerCode c = code("STEANE7");
  const StateVector logical = random_state(1, rng);
  const StateVector psi = encode(c, logical);
  // classical error channel: identity or one of the single-qubit errors
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t pick = rng.next_below(c.table.size());
    const StateVector bad = inject_error(psi, c.table[pick].error);
    auto [signs, post] = measure_syndrome(bad, c, rng);
    const StateVector fixed = correct(post, c, signs);
    REQUIRE(equal_up_to_global_phase(fixed, psi, 1e-8));
  }
}

TEST_CASE("unknown syndrome is rejected") {
  Rng rng(709);
  const StabilizerCode bf = code("BITFLIP3");
  const StateVector psi = encode(bf, random_state(1, rng));
  REQUIRE_THROWS_AS(correct(psi, bf, Syndrome{-1, -1, -1}), std::runtime_error);
}

TEST_CASE("ancilla-coupled measurement circuit equals projector sampling") {
  // one stabilizer measurement of Z1 Z2 on the bit-flip code via an ancilla:
  // H, controlled-(Z(x)Z), H, then measure the ancilla
  Rng rng(710);
  const StabilizerCode bf = code("BITFLIP3");
  const StateVector logical = random_state(1, rng);
  const StateVector psi = encode(bf, logical);
  const StateVector bad = inject_error(psi, single_pauli(3, 'X', 2));

  const Gate h = standard_gate("H");
  const Gate czz = controlled(gate_tensor(standard_gate("Z"), standard_gate("Z")));
  for (const StateVector& input : {psi, bad}) {
    StateVector wide = tensor_product(input, basis_state(2, 0));  // 2 ancillas
    wide = apply(wide, h, {3});
    wide = apply(wide, czz, {3, 0, 1});
    wide = apply(wide, h, {3});
    wide = apply(wide, h, {4});
    wide = apply(wide, czz, {4, 1, 2});
    wide = apply(wide, h, {4});
    const MeasurementResult m = measure_subset(wide, {3, 4}, rng);

    auto [signs, post] = measure_syndrome(input, bf, rng);
    const std::uint64_t want_bits =
        (signs[0] < 0 ? 2 : 0) | (signs[1] < 0 ? 1 : 0);
    REQUIRE(m.bits == want_bits);  // both deterministic for these inputs
    // codeword qubits after the ancilla circuit match the projected state
    StateVector reduced;
    reduced.num_qubits = 3;
    reduced.amps.resize(8);
    for (std::uint64_t x = 0; x < 8; ++x)
      reduced.amps[x] = m.post_state.amps[x * 4 + m.bits];
    check_close(reduced, post, 1e-10);
  }
}

TEST_CASE("logical operators") {
  const LogicalOperatorReport steane = logical_operator_check(code("STEANE7"));
  REQUIRE(steane.x_ok);
  REQUIRE(steane.z_ok);
  REQUIRE(steane.h_ok);

  const LogicalOperatorReport shor = logical_operator_check(code("SHOR9"));
  REQUIRE(shor.swapped);

  REQUIRE_THROWS_AS(logical_operator_check(code("FIVE")), std::domain_error);
}

TEST_CASE("ft_concatenation reproduces the concatenation table") {
  const Rational p(1, 8), c(2, 1);
  const std::vector<std::pair<Rational, u64>> want = {
      {Rational(1, u128(1) << 3), 1},     {Rational(1, u128(1) << 5), 7},
      {Rational(1, u128(1) << 9), 49},    {Rational(1, u128(1) << 17), 343},
      {Rational(1, u128(1) << 33), 2401}, {Rational(1, u128(1) << 65), 16807}};
  for (int l = 0; l <= 5; ++l) {
    const ConcatenationResult r = ft_concatenation({p, c, 7, l});
    REQUIRE(r.error_rate == want[l].first);
    REQUIRE(r.qubit_count == want[l].second);
  }
}
