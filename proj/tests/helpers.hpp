#pragma once

#include <catch2/catch_amalgamated.hpp>

#include "qsim/rng.hpp"
#include "qsim/state.hpp"

namespace qsim::test {

inline StateVector random_state(int n, Rng& rng) {
  StateVector s;
  s.num_qubits = n;
  s.amps.resize(std::uint64_t{1} << n);
  for (auto& a : s.amps) {
    // Box-Muller pairs give a rotation-invariant distribution on the sphere.
    const double u1 = rng.next_double(), u2 = rng.next_double();
    const double u3 = rng.next_double(), u4 = rng.next_double();
    const double r1 = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double r2 = std::sqrt(-2.0 * std::log(1.0 - u3));
    a = Amplitude{r1 * std::cos(2 * std::numbers::pi * u2),
                  r2 * std::cos(2 * std::numbers::pi * u4)};
  }
  return normalize(s);
}

inline double max_abs_diff(const std::vector<Amplitude>& a,
                           const std::vector<Amplitude>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline void check_close(const StateVector& got, const StateVector& want,
                        double tol = 1e-10) {
  REQUIRE(got.num_qubits == want.num_qubits);
  REQUIRE(max_abs_diff(got.amps, want.amps) < tol);
}

}  // namespace qsim::test
