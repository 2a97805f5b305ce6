#pragma once

#include <cstdint>

#include "divsum/exponent.hpp"
#include "divsum/real.hpp"

namespace divsum {

/// A value with a rigorous two-sided error bound:
/// the true quantity lies in [value - error_bound, value + error_bound].
struct CertifiedValue {
  Real value{kDefaultPrecision};
  double error_bound = 0.0;
  std::uint64_t truncation_K = 0;

  double lower() const;
  double upper() const;
};

struct MainTermOptions {
  mpfr_prec_t precision = kDefaultPrecision;
  /// |D(t) - t log t - (2 gamma - 1) t| <= divisor_envelope * sqrt(t) for t >= 1.
  /// The best published explicit constant is 0.961; 1.0 leaves headroom.
  double divisor_envelope = 1.0;
  std::uint64_t initial_K = std::uint64_t{1} << 10;
  std::uint64_t max_K = std::uint64_t{1} << 32;
  /// Work unit for the parallel partial sums.
  std::uint64_t chunk = std::uint64_t{1} << 16;
};

/// sum_{k=1}^{K} d(k) (k^{-1/c} - (k+1)^{-1/c}) at the requested precision.
/// Real exponents are evaluated at their nearest value.
Real dc_partial(const Exponent& c, std::uint64_t K, const MainTermOptions& opt = {});

/// dc_partial(c, K) plus the centered Abel-summation enclosure of the tail
/// k > K. Needs rational c.
CertifiedValue dc_at(const Exponent& c, std::uint64_t K, const MainTermOptions& opt = {});

/// Doubles K from opt.initial_K until the error bound is <= target_error.
/// ResourceError once K would exceed opt.max_K.
CertifiedValue dc_constant(const Exponent& c, double target_error,
                           const MainTermOptions& opt = {});

/// d_c x^{1/c}, bound = x^{1/c} * bound(d_c) + rounding envelope.
CertifiedValue main_term(std::uint64_t x, const Exponent& c, double target_error,
                         const MainTermOptions& opt = {});
/// Same, reusing an already certified d_c.
CertifiedValue main_term(std::uint64_t x, const Exponent& c, const CertifiedValue& dc,
                         const MainTermOptions& opt = {});

namespace detail {
/// Lower/upper ends of the tail sum_{k > K} d(k) (k^{-1/c} - (k+1)^{-1/c}),
/// given D(K). Exposed for testing.
void tail_enclosure(const Exponent& c, std::uint64_t K, std::uint64_t D_K, double envelope,
                    Real& lo, Real& hi);
}  // namespace detail

}  // namespace divsum
