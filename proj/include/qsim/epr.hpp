#pragma once

#include <array>

#include "qsim/measure.hpp"

namespace qsim {

// Measurement axis on the Bloch sphere.
struct Direction {
  double theta = 0.0;  // polar angle, [0, pi]
  double phi = 0.0;    // azimuthal angle
};

inline std::array<double, 3> unit_vector(const Direction& d) {
  return {std::sin(d.theta) * std::cos(d.phi), std::sin(d.theta) * std::sin(d.phi),
          std::cos(d.theta)};
}

inline double angle_between(const Direction& a, const Direction& b) {
  const auto u = unit_vector(a), v = unit_vector(b);
  const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

// Eigenstates of sigma.n: |0_n> for eigenvalue +1, |1_n> for -1.
inline StateVector bloch_state(const Direction& d, int which) {
  const double c = std::cos(d.theta / 2), s = std::sin(d.theta / 2);
  if (which == 0) return make_state(1, {{c, 0}, std::polar(s, d.phi)});
  if (which == 1) return make_state(1, {{-s, 0}, std::polar(c, d.phi)});
  throw std::domain_error("bloch_state: which must be 0 or 1");
}

// sigma.n = [[nz, nx - i ny], [nx + i ny, -nz]]; Hermitian with eigenvalues
// +-1 along any axis.
inline Gate spin_observable(const Direction& d) {
  const auto n = unit_vector(d);
  return make_gate(1, {{n[2], 0}, {n[0], -n[1]}, {n[0], n[1]}, {-n[2], 0}});
}

// Rows are <0_n| and <1_n|: maps the n-basis onto the computational basis, so
// measuring Z afterwards realizes a measurement along n (outcome bit 0 means
// eigenvalue +1).
inline Gate basis_change(const Direction& d) {
  const double c = std::cos(d.theta / 2), s = std::sin(d.theta / 2);
  return make_gate(1, {{c, 0}, std::polar(s, -d.phi), {-s, 0}, std::polar(c, -d.phi)});
}

inline StateVector singlet_state() {
  const double f = 1.0 / std::sqrt(2.0);
  return make_state(2, {{0, 0}, {f, 0}, {-f, 0}, {0, 0}});
}

// Joint outcome probabilities for a singlet pair measured along two axes:
// equal results carry sin^2(theta/2)/2, opposite results cos^2(theta/2)/2.
inline double singlet_joint_probability(const Direction& a, const Direction& c,
                                        int outcome_a, int outcome_b) {
  const double half = angle_between(a, c) / 2;
  const double same = 0.5 * std::sin(half) * std::sin(half);
  const double diff = 0.5 * std::cos(half) * std::cos(half);
  return outcome_a == outcome_b ? same : diff;
}

struct BellExperiment {
  // counts[i][j]: trials with Alice on direction i, Bob on direction j
  std::array<std::array<long, 3>, 3> pair_counts{};
  std::array<std::array<long, 3>, 3> both_plus{};

  double p_plus_plus(int i, int j) const {
    return pair_counts[i][j] ? double(both_plus[i][j]) / double(pair_counts[i][j]) : 0.0;
  }
};

// Singlet pairs measured by Alice and Bob along independently random choices
// out of three axes; measurement along n is a basis change followed by Z.
inline BellExperiment bell_experiment(const Direction& a, const Direction& b,
                                      const Direction& c, long trials, Rng& rng) {
  if (trials < 1) throw std::domain_error("bell_experiment: need at least one trial");
  const std::array<Direction, 3> dirs{a, b, c};
  std::array<Gate, 3> rotate;
  for (int i = 0; i < 3; ++i) rotate[i] = basis_change(dirs[i]);

  BellExperiment out;
  const StateVector singlet = singlet_state();
  for (long t = 0; t < trials; ++t) {
    const int ia = static_cast<int>(rng.next_below(3));
    const int ib = static_cast<int>(rng.next_below(3));
    StateVector s = apply(singlet, rotate[ia], {0});
    s = apply(s, rotate[ib], {1});
    const std::uint64_t bits = measure_all(s, rng).bits;
    ++out.pair_counts[ia][ib];
    if (bits == 0) ++out.both_plus[ia][ib];  // both measured eigenvalue +1
  }
  return out;
}

// The three-axis inequality in its squared form, for the coplanar
// configuration with c halfway between a and b: lhs = sin^2 theta must not
// exceed rhs = 2 sin^2(theta/2) under local realism, yet it does for
// 0 < theta < pi/2.
struct BellInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
};

inline BellInequality bell_inequality_check(double theta) {
  if (theta <= 0.0 || theta >= std::numbers::pi)
    throw std::domain_error("bell_inequality_check: theta must lie in (0, pi)");
  BellInequality r;
  const double s = std::sin(theta), sh = std::sin(theta / 2);
  r.lhs = s * s;
  r.rhs = 2 * sh * sh;
  r.violated = r.lhs > r.rhs + 1e-12;
  return r;
}

// Local-realist reference: every pair is emitted as one of eight population
// types fixing all three answers for Alice (Bob anti-correlated).  Any such
// model satisfies P(+a;+b) <= P(+a;+c) + P(+c;+b).
struct HiddenVariableModel {
  std::array<double, 8> populations{};  // nonnegative, summing to 1
};

inline HiddenVariableModel random_hidden_variable_model(Rng& rng) {
  HiddenVariableModel m;
  double total = 0;
  for (double& p : m.populations) {
    p = rng.next_double();
    total += p;
  }
  for (double& p : m.populations) p /= total;
  return m;
}

inline BellExperiment hidden_variable_experiment(const HiddenVariableModel& model,
                                                 long trials, Rng& rng) {
  BellExperiment out;
  std::array<double, 8> cdf{};
  double acc = 0;
  for (int i = 0; i < 8; ++i) {
    acc += model.populations[i];
    cdf[i] = acc;
  }
  for (long t = 0; t < trials; ++t) {
    const double u = rng.next_double() * acc;
    int type = 0;
    while (type < 7 && u >= cdf[type]) ++type;
    // type bits give Alice's three predetermined answers (+ when the bit is 0)
    const int ia = static_cast<int>(rng.next_below(3));
    const int ib = static_cast<int>(rng.next_below(3));
    const bool alice_plus = ((type >> (2 - ia)) & 1) == 0;
    const bool bob_plus = ((type >> (2 - ib)) & 1) == 1;  // opposite answers
    ++out.pair_counts[ia][ib];
    if (alice_plus && bob_plus) ++out.both_plus[ia][ib];
  }
  return out;
}

}  // namespace qsim
