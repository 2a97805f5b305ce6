#include "divsum/real.hpp"

#include <vector>

namespace divsum {

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(v_, precision);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t precision) {
  mpfr_init2(v_, precision);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

std::string Real::str(int digits) const {
  int n = mpfr_snprintf(nullptr, 0, "%.*Rg", digits, v_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace divsum
