#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "divsum/exponent.hpp"
#include "divsum/int128.hpp"

namespace divsum {

struct FloorOptions {
  /// Starting precision for real exponents; doubled up to `max_doublings` times.
  mpfr_prec_t initial_precision = 256;
  int max_doublings = 4;
};

/// Exact floors of x/n^c and (x/k)^{1/c} for one fixed (x, c).
///
/// For c = p/q the floors are defined by integer inequalities:
///   [x/n^c]      = max { k : k^q n^p <= x^q } = iroot_q([x^q / n^p])
///   [(x/k)^{1/c}] = max { n : n^p k^q <= x^q } = iroot_p([x^q / k^q])
/// x^q is cached as a 128-bit word when it fits and as an mpz otherwise.
/// Real exponents use MPFR enclosures, doubling precision until the
/// enclosure excludes every integer boundary.
class FloorEvaluator {
 public:
  FloorEvaluator(std::uint64_t x, Exponent c, FloorOptions opt = {});

  /// [x / n^c], n >= 1.
  std::uint64_t over_pow(std::uint64_t n) const;
  /// [(x / k)^{1/c}], k >= 1. Throws ResourceError past 64 bits.
  std::uint64_t inv_pow(std::uint64_t k) const;

  std::uint64_t x() const { return x_; }
  const Exponent& exponent() const { return c_; }

 private:
  std::uint64_t over_pow_real(std::uint64_t n) const;
  std::uint64_t inv_pow_real(std::uint64_t k) const;

  std::uint64_t x_;
  Exponent c_;
  FloorOptions opt_;
  bool fits_ = false;
  u128 xq_ = 0;
  mpz_class xq_big_;
};

/// [x / n^c].
std::uint64_t floor_x_over_pow(std::uint64_t x, std::uint64_t n, const Exponent& c,
                               const FloorOptions& opt = {});

/// [(x / k)^{1/c}].
std::uint64_t floor_inv_pow(std::uint64_t x, std::uint64_t k, const Exponent& c,
                            const FloorOptions& opt = {});

/// Sawtooth t - [t] - 1/2.
double psi_value(double t);

}  // namespace divsum
