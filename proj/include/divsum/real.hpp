#pragma once

#include <mpfr.h>

#include <string>

namespace divsum {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Owning handle for an MPFR number.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = kDefaultPrecision);
  Real(double v, mpfr_prec_t precision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  /// Fixed-notation decimal with `digits` significant digits.
  std::string str(int digits = 30) const;

 private:
  mpfr_t v_;
};

}  // namespace divsum
