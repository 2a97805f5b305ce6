#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "divsum/real.hpp"

namespace divsum {

/// The exponent c > 0. Either an exact reduced fraction p/q, or a real
/// literal that is only known through enclosures of any requested width.
class Exponent {
 public:
  enum class Kind { kRational, kReal };

  /// Largest numerator/denominator accepted for the rational kind.
  static constexpr std::uint64_t kMaxTerm = 10000;

  static Exponent rational(std::uint64_t p, std::uint64_t q);
  /// `literal` is a decimal, "p/q", "sqrt(N)", "pi" or "e".
  static Exponent real(std::string literal, mpfr_prec_t precision = 256);

  /// Parses "p/q", an integer or a finite decimal into the rational kind.
  /// With `force_real`, builds the real kind from any accepted literal.
  static Exponent parse(std::string_view text, bool force_real = false,
                        mpfr_prec_t precision = 256);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::kRational; }
  std::uint64_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  /// Exact value; throws DomainError for the real kind.
  mpq_class as_rational() const;
  mpfr_prec_t precision() const { return precision_; }

  /// Sets lo <= c <= hi, with both ends rounded to the precision of lo/hi.
  void enclose(Real& lo, Real& hi) const;
  /// Round-to-nearest value at the precision of `out`.
  void nearest(Real& out) const;

  double to_double() const;
  /// "p/q" (or "p" when q == 1) for rationals; the literal otherwise.
  std::string str() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.q_ == b.q_ && a.literal_ == b.literal_;
  }

 private:
  Exponent() = default;

  Kind kind_ = Kind::kRational;
  std::uint64_t p_ = 1;
  std::uint64_t q_ = 1;
  std::string literal_;
  mpfr_prec_t precision_ = 256;
};

}  // namespace divsum
