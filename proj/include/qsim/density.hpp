#pragma once

#include <algorithm>

#include "qsim/gates.hpp"
#include "qsim/state.hpp"

namespace qsim {

// Hermitian, trace-1, positive matrix over a 2^k-dimensional subsystem.
struct DensityMatrix {
  std::uint64_t dim = 0;
  std::vector<Amplitude> entries;  // row-major dim*dim

  Amplitude& at(std::uint64_t r, std::uint64_t c) { return entries[r * dim + c]; }
  const Amplitude& at(std::uint64_t r, std::uint64_t c) const {
    return entries[r * dim + c];
  }
  double trace_real() const {
    double t = 0;
    for (std::uint64_t i = 0; i < dim; ++i) t += at(i, i).real();
    return t;
  }
};

struct EigenSystem {
  std::vector<double> values;                  // descending
  std::vector<std::vector<Amplitude>> vectors; // vectors[k] pairs with values[k]
};

namespace detail {

// Cyclic Jacobi sweeps for a complex Hermitian matrix.  Each rotation zeroes
// one off-diagonal pair; sweeps repeat until the off-diagonal mass falls
// below tol.  Deterministic and ample for the small dimensions used here.
inline EigenSystem jacobi_hermitian(std::vector<Amplitude> a, std::uint64_t d,
                                    double tol = 1e-12) {
  std::vector<std::vector<Amplitude>> v(d, std::vector<Amplitude>(d, Amplitude{0, 0}));
  for (std::uint64_t i = 0; i < d; ++i) v[i][i] = 1;  // v[i][k]: component i of vector k

  auto off = [&]() {
    double s = 0;
    for (std::uint64_t p = 0; p < d; ++p)
      for (std::uint64_t q = p + 1; q < d; ++q) s += std::norm(a[p * d + q]);
    return s;
  };

  for (int sweep = 0; sweep < 100 && off() > tol * tol; ++sweep) {
    for (std::uint64_t p = 0; p < d; ++p)
      for (std::uint64_t q = p + 1; q < d; ++q) {
        const Amplitude apq = a[p * d + q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = a[p * d + p].real();
        const double aqq = a[q * d + q].real();
        // unitary 2x2: [[c, -conj(s)], [s, c]] with s aligned to apq's phase
        const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), aqq - app);
        const double c = std::cos(theta);
        const Amplitude phase = apq / std::abs(apq);
        const Amplitude s = std::sin(theta) * phase;

        for (std::uint64_t k = 0; k < d; ++k) {
          const Amplitude akp = a[k * d + p], akq = a[k * d + q];
          a[k * d + p] = c * akp - std::conj(s) * akq;
          a[k * d + q] = s * akp + c * akq;
        }
        for (std::uint64_t k = 0; k < d; ++k) {
          const Amplitude apk = a[p * d + k], aqk = a[q * d + k];
          a[p * d + k] = c * apk - s * aqk;
          a[q * d + k] = std::conj(s) * apk + c * aqk;
        }
        for (std::uint64_t k = 0; k < d; ++k) {
          const Amplitude vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - std::conj(s) * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(d);
  for (std::size_t k = 0; k < d; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * d + x].real() > a[y * d + y].real();
  });

  EigenSystem es;
  es.values.resize(d);
  es.vectors.assign(d, std::vector<Amplitude>(d));
  for (std::size_t k = 0; k < d; ++k) {
    es.values[k] = a[order[k] * d + order[k]].real();
    for (std::uint64_t i = 0; i < d; ++i) es.vectors[k][i] = v[i][order[k]];
    // deterministic phase: first component of meaningful size made real positive
    std::uint64_t lead = 0;
    while (lead + 1 < d && std::abs(es.vectors[k][lead]) < 1e-9) ++lead;
    const Amplitude z = es.vectors[k][lead];
    if (std::abs(z) > 0) {
      const Amplitude ph = std::conj(z) / std::abs(z);
      for (auto& comp : es.vectors[k]) comp *= ph;
    }
  }
  return es;
}

}  // namespace detail

inline EigenSystem eigen_hermitian(const DensityMatrix& rho) {
  return detail::jacobi_hermitian(rho.entries, rho.dim);
}

inline DensityMatrix from_pure(const StateVector& s) {
  DensityMatrix rho;
  rho.dim = s.dim();
  rho.entries.resize(rho.dim * rho.dim);
  for (std::uint64_t r = 0; r < rho.dim; ++r)
    for (std::uint64_t c = 0; c < rho.dim; ++c)
      rho.entries[r * rho.dim + c] = s.amps[r] * std::conj(s.amps[c]);
  return rho;
}

// rho = sum_i p_i |psi_i><psi_i|; the states need not be orthogonal.
inline DensityMatrix mixed_from_ensemble(const std::vector<StateVector>& states,
                                         const std::vector<double>& probs) {
  if (states.empty() || states.size() != probs.size())
    throw std::domain_error("mixed_from_ensemble: states/probs mismatch");
  double total = 0;
  for (double p : probs) {
    if (p < 0) throw std::domain_error("mixed_from_ensemble: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::domain_error("mixed_from_ensemble: probabilities must sum to 1");

  DensityMatrix rho;
  rho.dim = states[0].dim();
  rho.entries.assign(rho.dim * rho.dim, Amplitude{0, 0});
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != rho.dim)
      throw std::domain_error("mixed_from_ensemble: dimension mismatch");
    for (std::uint64_t r = 0; r < rho.dim; ++r)
      for (std::uint64_t c = 0; c < rho.dim; ++c)
        rho.entries[r * rho.dim + c] +=
            probs[i] * states[i].amps[r] * std::conj(states[i].amps[c]);
  }
  return rho;
}

namespace detail {

struct Split {
  std::vector<int> keep;    // subsystem A qubit positions, ascending
  std::vector<int> others;  // subsystem B positions, ascending
  int n = 0;

  // A-index from the kept bits (keep[0] most significant), B-index likewise.
  std::uint64_t a_index(std::uint64_t x) const {
    std::uint64_t i = 0;
    for (int q : keep) i = (i << 1) | ((x >> (n - 1 - q)) & 1);
    return i;
  }
  std::uint64_t b_index(std::uint64_t x) const {
    std::uint64_t j = 0;
    for (int q : others) j = (j << 1) | ((x >> (n - 1 - q)) & 1);
    return j;
  }
  std::uint64_t full_index(std::uint64_t i, std::uint64_t j) const {
    std::uint64_t x = 0;
    for (std::size_t k = 0; k < keep.size(); ++k)
      if (i & (std::uint64_t{1} << (keep.size() - 1 - k)))
        x |= std::uint64_t{1} << (n - 1 - keep[k]);
    for (std::size_t k = 0; k < others.size(); ++k)
      if (j & (std::uint64_t{1} << (others.size() - 1 - k)))
        x |= std::uint64_t{1} << (n - 1 - others[k]);
    return x;
  }
};

inline Split make_split(const StateVector& s, std::vector<int> keep) {
  Split sp;
  sp.n = s.num_qubits;
  std::sort(keep.begin(), keep.end());
  std::uint64_t seen = 0;
  for (int q : keep) {
    if (q < 0 || q >= sp.n) throw std::domain_error("partial_trace: position out of range");
    const std::uint64_t b = std::uint64_t{1} << q;
    if (seen & b) throw std::domain_error("partial_trace: duplicate position");
    seen |= b;
  }
  sp.keep = std::move(keep);
  for (int q = 0; q < sp.n; ++q)
    if (!(seen & (std::uint64_t{1} << q))) sp.others.push_back(q);
  return sp;
}

}  // namespace detail

// rho^A_{i i'} = sum_j c_{ij} c*_{i'j}, tracing out every qubit not in keep.
inline DensityMatrix partial_trace(const StateVector& s, const std::vector<int>& keep) {
  const detail::Split sp = detail::make_split(s, keep);
  const std::uint64_t da = std::uint64_t{1} << sp.keep.size();
  const std::uint64_t db = std::uint64_t{1} << sp.others.size();

  // reshape into c[i][j] first
  std::vector<Amplitude> c(da * db);
  for (std::uint64_t x = 0; x < s.amps.size(); ++x)
    c[sp.a_index(x) * db + sp.b_index(x)] = s.amps[x];

  DensityMatrix rho;
  rho.dim = da;
  rho.entries.assign(da * da, Amplitude{0, 0});
  for (std::uint64_t i = 0; i < da; ++i)
    for (std::uint64_t ip = 0; ip < da; ++ip) {
      Amplitude acc{0, 0};
      for (std::uint64_t j = 0; j < db; ++j)
        acc += c[i * db + j] * std::conj(c[ip * db + j]);
      rho.entries[i * da + ip] = acc;
    }
  return rho;
}

struct EntanglementReport {
  double purity = 0.0;   // Tr (rho^A)^2
  double entropy = 0.0;  // -sum p log p, natural log
  bool product = false;
};

inline EntanglementReport entanglement_report(const StateVector& s,
                                              const std::vector<int>& keep) {
  const DensityMatrix rho = partial_trace(s, keep);
  EntanglementReport rep;
  for (std::uint64_t r = 0; r < rho.dim; ++r)
    for (std::uint64_t c = 0; c < rho.dim; ++c)
      rep.purity += (rho.at(r, c) * rho.at(c, r)).real();
  const EigenSystem es = eigen_hermitian(rho);
  for (double p : es.values) {
    if (p < 0) p = 0;  // clamp eigenvalues in [-1e-10, 0)
    if (p > 0) rep.entropy -= p * std::log(p);
  }
  rep.product = rep.purity >= 1.0 - 1e-8;
  return rep;
}

struct SchmidtDecomposition {
  std::vector<double> coefficients;        // non-negative, descending
  std::vector<StateVector> left_states;    // orthonormal, on keep
  std::vector<StateVector> right_states;   // orthonormal, on the rest
};

// Eigendecomposition of rho^A gives the left factors; each right factor is
// the projection of the state onto its left partner.  Left-vector phases are
// fixed (leading component real positive) so the output is reproducible.
inline SchmidtDecomposition schmidt(const StateVector& s, const std::vector<int>& keep) {
  const detail::Split sp = detail::make_split(s, keep);
  const std::uint64_t da = std::uint64_t{1} << sp.keep.size();
  const std::uint64_t db = std::uint64_t{1} << sp.others.size();

  std::vector<Amplitude> c(da * db, Amplitude{0, 0});
  for (std::uint64_t x = 0; x < s.amps.size(); ++x)
    c[sp.a_index(x) * db + sp.b_index(x)] = s.amps[x];

  const EigenSystem es = eigen_hermitian(partial_trace(s, keep));

  SchmidtDecomposition out;
  const int nb = static_cast<int>(sp.others.size());
  for (std::uint64_t k = 0; k < da; ++k) {
    if (es.values[k] < 1e-12) continue;
    const double coeff = std::sqrt(es.values[k]);

    StateVector left;
    left.num_qubits = static_cast<int>(sp.keep.size());
    left.amps = es.vectors[k];

    StateVector right;
    right.num_qubits = nb > 0 ? nb : 0;
    right.amps.assign(db, Amplitude{0, 0});
    for (std::uint64_t j = 0; j < db; ++j) {
      Amplitude acc{0, 0};
      for (std::uint64_t i = 0; i < da; ++i)
        acc += std::conj(left.amps[i]) * c[i * db + j];
      right.amps[j] = acc / coeff;
    }
    out.coefficients.push_back(coeff);
    out.left_states.push_back(std::move(left));
    out.right_states.push_back(std::move(right));
  }
  return out;
}

// Rebuild sum_k c_k |phi_k> (x) |sigma_k| in the original qubit order.
inline StateVector schmidt_reconstruct(const SchmidtDecomposition& sd,
                                       const StateVector& like,
                                       const std::vector<int>& keep) {
  const detail::Split sp = detail::make_split(like, keep);
  StateVector r;
  r.num_qubits = like.num_qubits;
  r.amps.assign(like.amps.size(), Amplitude{0, 0});
  for (std::size_t k = 0; k < sd.coefficients.size(); ++k)
    for (std::uint64_t i = 0; i < sd.left_states[k].amps.size(); ++i)
      for (std::uint64_t j = 0; j < sd.right_states[k].amps.size(); ++j)
        r.amps[sp.full_index(i, j)] +=
            sd.coefficients[k] * sd.left_states[k].amps[i] * sd.right_states[k].amps[j];
  return r;
}

inline DensityMatrix evolve(const DensityMatrix& rho, const Gate& u) {
  if (u.dim() != rho.dim) throw std::domain_error("evolve: dimension mismatch");
  const std::uint64_t d = rho.dim;
  DensityMatrix out;
  out.dim = d;
  out.entries.assign(d * d, Amplitude{0, 0});
  // U rho U^dagger
  std::vector<Amplitude> tmp(d * d, Amplitude{0, 0});
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t k = 0; k < d; ++k) {
      const Amplitude uik = u.at(i, k);
      if (uik == Amplitude{0, 0}) continue;
      for (std::uint64_t j = 0; j < d; ++j) tmp[i * d + j] += uik * rho.at(k, j);
    }
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j) {
      Amplitude acc{0, 0};
      for (std::uint64_t k = 0; k < d; ++k) acc += tmp[i * d + k] * std::conj(u.at(j, k));
      out.entries[i * d + j] = acc;
    }
  return out;
}

// Tr(rho O), real part; pairs with expectation() on the kept subsystem.
inline double trace_with(const DensityMatrix& rho, const Gate& obs) {
  if (obs.dim() != rho.dim) throw std::domain_error("trace_with: dimension mismatch");
  Amplitude acc{0, 0};
  for (std::uint64_t i = 0; i < rho.dim; ++i)
    for (std::uint64_t k = 0; k < rho.dim; ++k) acc += rho.at(i, k) * obs.at(k, i);
  return acc.real();
}

}  // namespace qsim
