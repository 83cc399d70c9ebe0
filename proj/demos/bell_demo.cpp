// Minimal tour: build a Bell pair, show its correlations, then push the axis
// separation through the three-direction inequality.

#include <iostream>

#include "qsim/epr.hpp"

int main() {
  using namespace qsim;

  Circuit bell;
  bell.width = 2;
  bell.add(standard_gate("H"), {0}).add(standard_gate("CNOT"), {0, 1});
  const StateVector pair = run_circuit(bell, basis_state(2, 0));
  std::cout << "Bell pair amplitudes:";
  for (const auto& a : pair.amps) std::cout << " " << a.real();
  std::cout << "\n";

  Rng rng(1);
  std::cout << "20 joint measurements:";
  for (int i = 0; i < 20; ++i) std::cout << " " << measure_all(pair, rng).bits;
  std::cout << "\n\n";

  for (double theta : {0.3, 0.8, 1.0471975512, 1.6, 2.4}) {
    const BellInequality check = bell_inequality_check(theta);
    std::cout << "theta = " << theta << ": lhs " << check.lhs << " vs rhs "
              << check.rhs << (check.violated ? "  -> violated" : "") << "\n";
  }
  return 0;
}
