// Walks the period-finding pipeline for N = 91, a = 4: the analytic peak
// table, a handful of quantum samples, and the continued-fraction recovery.

#include <iostream>

#include "qsim/shor.hpp"

int main() {
  using namespace qsim;

  const PeriodInstance inst = make_period_instance(91, 4);
  std::cout << "N = " << inst.n_mod << ", a = " << inst.a << ", upper register "
            << inst.n << " qubits, true period " << inst.r << "\n\n";

  const YDistribution dist = y_distribution(inst);
  std::cout << "peaks (nearest integer, probability):\n";
  double nearest_total = 0, window4_total = 0;
  for (double center : dist.peak_centers) {
    const u64 y = static_cast<u64>(std::llround(center));
    std::cout << "  y ~ " << center << " -> P(" << y << ") = " << dist.probs[y]
              << "\n";
    if (y == 0) continue;
    nearest_total += dist.probs[y];
    for (long off = -2; off <= 2; ++off) window4_total += dist.probs[y + off];
  }
  std::cout << "useful-peak weight: nearest integers " << nearest_total
            << ", widening to the 4 closest " << window4_total << "\n";

  Rng rng(2);
  std::cout << "\nsampled y values and recovered periods:\n";
  for (int i = 0; i < 8; ++i) {
    const u64 y = sample_y(inst, rng);
    const auto r = extract_period(y, inst);
    std::cout << "  y = " << y << " -> "
              << (r ? "r = " + std::to_string(*r) : std::string("no luck")) << "\n";
  }

  const FactorResult f = factor(91, rng);
  std::cout << "\nfactor(91) = " << f.p << " x " << f.q << " after "
            << f.sampling_rounds << " sampling rounds\n";
  return 0;
}
