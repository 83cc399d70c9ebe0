#pragma once

#include <numbers>

#include "qsim/state.hpp"

namespace qsim {

// Classical discrete Fourier transform with the symmetric 1/sqrt(N)
// normalization on BOTH directions:
//
//   y_k = (1/sqrt(N)) sum_m w^{km} x_m,   w = e^{2 pi i / N},
//
// which differs from the engineering convention (no factor forward, 1/N
// back).  Parseval then holds exactly: sum |x|^2 = sum |y|^2.
struct SignalVector {
  std::vector<Amplitude> values;
};

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline SignalVector pad_to_power_of_two(SignalVector x) {
  std::size_t n = 1;
  while (n < x.values.size()) n <<= 1;
  x.values.resize(n, Amplitude{0, 0});
  return x;
}

inline SignalVector dft_direct(const SignalVector& x) {
  const std::size_t n = x.values.size();
  SignalVector y;
  y.values.assign(n, Amplitude{0, 0});
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    Amplitude acc{0, 0};
    for (std::size_t m = 0; m < n; ++m) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>((k * m) % n) /
                         static_cast<double>(n);
      acc += std::polar(1.0, ang) * x.values[m];
    }
    y.values[k] = scale * acc;
  }
  return y;
}

inline SignalVector inverse_dft(const SignalVector& y) {
  const std::size_t n = y.values.size();
  SignalVector x;
  x.values.assign(n, Amplitude{0, 0});
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t m = 0; m < n; ++m) {
    Amplitude acc{0, 0};
    for (std::size_t k = 0; k < n; ++k) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>((k * m) % n) /
                         static_cast<double>(n);
      acc += std::polar(1.0, ang) * y.values[k];
    }
    x.values[m] = scale * acc;
  }
  return x;
}

// Iterative radix-2 transform.  Stage l maps x^(l) to x^(l-1) by
//
//   x^(l-1)[2^{l-1} k + p] =
//     ( x^(l)[2^l k + p] + w^{2^{l-1} k} x^(l)[2^l k + p + 2^{l-1}] ) / sqrt(2)
//
// with p < 2^{l-1}, k < 2^{n-l+1}, lower indices reduced mod N.  Running l
// from n down to 1 leaves the transform in natural order, n stages of N
// butterflies each.
inline SignalVector fft(const SignalVector& x) {
  const std::size_t n = x.values.size();
  if (!is_power_of_two(n)) throw std::domain_error("fft: length must be a power of 2");
  int log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;

  std::vector<Amplitude> twiddle(n);
  for (std::size_t j = 0; j < n; ++j)
    twiddle[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                     static_cast<double>(n));

  std::vector<Amplitude> cur = x.values, next(n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int l = log2n; l >= 1; --l) {
    const std::size_t half = std::size_t{1} << (l - 1);
    const std::size_t full = half << 1;
    const std::size_t kmax = std::size_t{1} << (log2n - l + 1);
    for (std::size_t k = 0; k < kmax; ++k) {
      const Amplitude w = twiddle[(half * k) % n];
      for (std::size_t p = 0; p < half; ++p) {
        const std::size_t src = (full * k + p) % n;
        const std::size_t src2 = (full * k + p + half) % n;
        next[half * k + p] = s * (cur[src] + w * cur[src2]);
      }
    }
    cur.swap(next);
  }
  return SignalVector{std::move(cur)};
}

}  // namespace qsim
