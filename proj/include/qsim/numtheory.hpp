#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsim {

// Integer arithmetic behind the factoring pipeline.  Desk-scale inputs stay
// far below 2^16, but intermediates run through 128-bit types for headroom.
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 gcd_u64(u64 a, u64 b) {
  if (a == 0 || b == 0) throw std::domain_error("gcd: inputs must be positive");
  while (b != 0) {
    const u64 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// d with c*d = 1 (mod a), 0 < d < a, by the extended Euclidean algorithm.
inline u64 mod_inverse(u64 c, u64 a) {
  if (a < 2) throw std::domain_error("mod_inverse: modulus must be at least 2");
  i64 r0 = static_cast<i64>(a), r1 = static_cast<i64>(c % a);
  i64 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i64 q = r0 / r1;
    const i64 r2 = r0 - q * r1;
    const i64 t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw std::domain_error("mod_inverse: arguments are not coprime");
  i64 d = t0 % static_cast<i64>(a);
  if (d < 0) d += static_cast<i64>(a);
  return static_cast<u64>(d);
}

// a^x mod N by squaring through the bits of x.
inline u64 mod_exp(u64 a, u64 x, u64 n) {
  if (n < 2) throw std::domain_error("mod_exp: modulus must be at least 2");
  u128 result = 1;
  u128 base = a % n;
  while (x > 0) {
    if (x & 1) result = (result * base) % n;
    base = (base * base) % n;
    x >>= 1;
  }
  return static_cast<u64>(result);
}

// Smallest r >= 1 with a^r = 1 (mod N); brute force, used as the oracle the
// quantum path is checked against.
inline u64 classical_period(u64 a, u64 n) {
  if (gcd_u64(a % n == 0 ? n : a, n) != 1)
    throw std::domain_error("classical_period: arguments are not coprime");
  u64 v = a % n;
  u64 r = 1;
  while (v != 1) {
    v = static_cast<u64>((u128(v) * a) % n);
    ++r;
    if (r > n) throw std::domain_error("classical_period: no period found");
  }
  return r;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct ContinuedFraction {
  std::vector<u64> coefficients;
  std::vector<std::pair<u64, u64>> convergents;  // (numerator, denominator), lowest terms
};

// Exact terminating expansion of num/den.  Each convergent is evaluated
// bottom-up from its own coefficient prefix; the fold keeps fractions in
// lowest terms by construction, and the last convergent reproduces the input
// exactly (integer arithmetic throughout).
inline ContinuedFraction continued_fraction(u64 num, u64 den) {
  if (den == 0) throw std::domain_error("continued_fraction: zero denominator");
  ContinuedFraction cf;
  u64 a = num, b = den;
  while (true) {
    cf.coefficients.push_back(a / b);
    const u64 rem = a % b;
    if (rem == 0) break;
    a = b;
    b = rem;
  }
  for (std::size_t len = 1; len <= cf.coefficients.size(); ++len) {
    // fold c_0 + 1/(c_1 + 1/(... + 1/c_{len-1})) from the innermost term out
    u64 p = cf.coefficients[len - 1], q = 1;
    for (std::size_t i = len - 1; i-- > 0;) {
      const u64 np = cf.coefficients[i] * p + q;
      q = p;
      p = np;
    }
    cf.convergents.emplace_back(p, q);
  }
  return cf;
}

// The convergent of num/den with the largest denominator below `bound`.
inline std::pair<u64, u64> best_fraction_below(u64 num, u64 den, u64 bound) {
  if (bound < 2) throw std::domain_error("best_fraction_below: bound must be at least 2");
  const ContinuedFraction cf = continued_fraction(num, den);
  std::pair<u64, u64> best{0, 1};
  for (const auto& c : cf.convergents)
    if (c.second < bound) best = c;
  return best;
}

struct RsaKey {
  u64 p = 0, q = 0, n = 0, c = 0, d = 0;
};

struct RsaResult {
  u64 d = 0, encoded = 0, decoded = 0;
};

inline RsaKey make_rsa_key(u64 p, u64 q, u64 c) {
  if (!is_prime(p) || !is_prime(q))
    throw std::domain_error("rsa: p and q must be prime");
  const u64 totient = (p - 1) * (q - 1);
  if (gcd_u64(c, totient) != 1)
    throw std::domain_error("rsa: c must be coprime to (p-1)(q-1)");
  RsaKey key;
  key.p = p;
  key.q = q;
  key.n = p * q;
  key.c = c;
  key.d = mod_inverse(c, totient);
  return key;
}

inline RsaResult rsa_demo(u64 p, u64 q, u64 c, u64 message) {
  const RsaKey key = make_rsa_key(p, q, c);
  if (message >= key.n) throw std::domain_error("rsa: message must be below N");
  RsaResult r;
  r.d = key.d;
  r.encoded = mod_exp(message, key.c, key.n);
  r.decoded = mod_exp(r.encoded, key.d, key.n);
  return r;
}

// Exact nonnegative rational on 128-bit words; enough range for the
// doubly-exponential error-rate table (denominators up to 2^65 and beyond).
struct Rational {
  u128 num = 0;
  u128 den = 1;

  Rational() = default;
  Rational(u128 n, u128 d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    u128 a = num, b = den;
    while (b != 0) {
      const u128 r = a % b;
      a = b;
      b = r;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
  }

  friend Rational operator*(const Rational& x, const Rational& y) {
    return Rational(x.num * y.num, x.den * y.den);
  }
  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num == y.num && x.den == y.den;
  }
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline std::string to_string(const Rational& r) {
  return u128_to_string(r.num) + "/" + u128_to_string(r.den);
}

}  // namespace qsim
