#pragma once

// Independent brute-force oracles shared by the unit tests. Nothing here
// calls into the library.

#include <cstdint>

#include <gmpxx.h>

namespace oracle {

/// Divisors of n by enumeration of every candidate up to n.
inline std::uint32_t divisors_enumerated(std::uint64_t n) {
  std::uint32_t d = 0;
  for (std::uint64_t m = 1; m <= n; ++m)
    if (n % m == 0) ++d;
  return d;
}

/// Divisors of n by enumeration up to sqrt(n).
inline std::uint32_t divisors_paired(std::uint64_t n) {
  std::uint32_t d = 0;
  for (std::uint64_t m = 1; m * m <= n; ++m)
    if (n % m == 0) d += (m * m == n) ? 1 : 2;
  return d;
}

inline mpz_class pow_z(std::uint64_t b, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

/// k^q n^p <= x^q, exact.
inline bool over_pow_holds(std::uint64_t x, std::uint64_t n, std::uint64_t k, std::uint64_t p,
                           std::uint64_t q) {
  return pow_z(k, q) * pow_z(n, p) <= pow_z(x, q);
}

/// [x / n^{p/q}] by linear search on the exact predicate (small answers only).
inline std::uint64_t floor_over_pow_linear(std::uint64_t x, std::uint64_t n, std::uint64_t p,
                                           std::uint64_t q) {
  std::uint64_t k = 0;
  while (over_pow_holds(x, n, k + 1, p, q)) ++k;
  return k;
}

}  // namespace oracle
