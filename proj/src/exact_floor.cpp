#include "divsum/exact_floor.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#include "divsum/errors.hpp"

namespace divsum {

namespace {

std::uint64_t to_u64(const mpz_class& v) {
  if (!v.fits_ulong_p()) throw ResourceError("floor value exceeds 64 bits");
  return v.get_ui();
}

std::uint64_t to_u64(u128 v) {
  if (v > UINT64_MAX) throw ResourceError("floor value exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

mpz_class mpz_pow(std::uint64_t base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// floor of an MPFR value that is known to be >= 0, as an exact integer.
mpz_class floor_of(mpfr_srcptr v) {
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), v, MPFR_RNDD);
  return z;
}

}  // namespace

FloorEvaluator::FloorEvaluator(std::uint64_t x, Exponent c, FloorOptions opt)
    : x_(x), c_(std::move(c)), opt_(opt) {
  if (x == 0) throw DomainError("floor evaluation needs x >= 1");
  if (!c_.is_rational()) return;
  if (auto v = checked_pow(x, c_.q())) {
    fits_ = true;
    xq_ = *v;
  } else {
    xq_big_ = mpz_pow(x, c_.q());
  }
}

std::uint64_t FloorEvaluator::over_pow(std::uint64_t n) const {
  if (n == 0) throw DomainError("floor_x_over_pow: n must be >= 1");
  if (!c_.is_rational()) return over_pow_real(n);
  const std::uint64_t p = c_.p(), q = c_.q();
  if (p == 1 && q == 1) return x_ / n;
  if (fits_) {
    auto np = checked_pow(n, p);
    if (!np || *np > xq_) return 0;
    return to_u64(iroot(xq_ / *np, q));
  }
  mpz_class m = xq_big_ / mpz_pow(n, p);
  mpz_class r;
  mpz_root(r.get_mpz_t(), m.get_mpz_t(), q);
  return to_u64(r);
}

std::uint64_t FloorEvaluator::inv_pow(std::uint64_t k) const {
  if (k == 0) throw DomainError("floor_inv_pow: k must be >= 1");
  if (!c_.is_rational()) return inv_pow_real(k);
  const std::uint64_t p = c_.p(), q = c_.q();
  if (p == 1 && q == 1) return x_ / k;
  if (fits_) {
    auto kq = checked_pow(k, q);
    if (!kq || *kq > xq_) return 0;
    return to_u64(iroot(xq_ / *kq, p));
  }
  mpz_class m = xq_big_ / mpz_pow(k, q);
  mpz_class r;
  mpz_root(r.get_mpz_t(), m.get_mpz_t(), p);
  return to_u64(r);
}

std::uint64_t FloorEvaluator::over_pow_real(std::uint64_t n) const {
  if (n == 1) return x_;
  mpfr_prec_t prec = opt_.initial_precision;
  for (int round = 0; round <= opt_.max_doublings; ++round, prec *= 2) {
    Real c_lo(prec), c_hi(prec), base(prec), pw_lo(prec), pw_hi(prec), v_lo(prec), v_hi(prec);
    c_.enclose(c_lo, c_hi);
    mpfr_set_ui(base.get(), n, MPFR_RNDN);  // exact: prec >= 64
    mpfr_pow(pw_lo.get(), base.get(), c_lo.get(), MPFR_RNDD);
    mpfr_pow(pw_hi.get(), base.get(), c_hi.get(), MPFR_RNDU);
    mpfr_ui_div(v_lo.get(), x_, pw_hi.get(), MPFR_RNDD);
    mpfr_ui_div(v_hi.get(), x_, pw_lo.get(), MPFR_RNDU);
    mpz_class f_lo = floor_of(v_lo.get()), f_hi = floor_of(v_hi.get());
    if (f_lo == f_hi) return to_u64(f_lo);
  }
  throw UndecidableFloor("cannot decide [x/n^c] for x=" + std::to_string(x_) +
                         " n=" + std::to_string(n) + " c=" + c_.str() +
                         " within the precision cap");
}

std::uint64_t FloorEvaluator::inv_pow_real(std::uint64_t k) const {
  if (k > x_) return 0;
  if (k == x_) return 1;
  mpfr_prec_t prec = opt_.initial_precision;
  for (int round = 0; round <= opt_.max_doublings; ++round, prec *= 2) {
    Real c_lo(prec), c_hi(prec), e_lo(prec), e_hi(prec), b_lo(prec), b_hi(prec), v_lo(prec),
        v_hi(prec);
    c_.enclose(c_lo, c_hi);
    mpfr_ui_div(e_lo.get(), 1, c_hi.get(), MPFR_RNDD);
    mpfr_ui_div(e_hi.get(), 1, c_lo.get(), MPFR_RNDU);
    mpfr_set_ui(b_lo.get(), x_, MPFR_RNDN);
    mpfr_set_ui(b_hi.get(), x_, MPFR_RNDN);
    mpfr_div_ui(b_lo.get(), b_lo.get(), k, MPFR_RNDD);
    mpfr_div_ui(b_hi.get(), b_hi.get(), k, MPFR_RNDU);
    // base > 1, so the power is increasing in both base and exponent.
    mpfr_pow(v_lo.get(), b_lo.get(), e_lo.get(), MPFR_RNDD);
    mpfr_pow(v_hi.get(), b_hi.get(), e_hi.get(), MPFR_RNDU);
    mpz_class f_lo = floor_of(v_lo.get()), f_hi = floor_of(v_hi.get());
    if (f_lo == f_hi) return to_u64(f_lo);
  }
  throw UndecidableFloor("cannot decide [(x/k)^(1/c)] for x=" + std::to_string(x_) +
                         " k=" + std::to_string(k) + " c=" + c_.str() +
                         " within the precision cap");
}

std::uint64_t floor_x_over_pow(std::uint64_t x, std::uint64_t n, const Exponent& c,
                               const FloorOptions& opt) {
  return FloorEvaluator(x, c, opt).over_pow(n);
}

std::uint64_t floor_inv_pow(std::uint64_t x, std::uint64_t k, const Exponent& c,
                            const FloorOptions& opt) {
  return FloorEvaluator(x, c, opt).inv_pow(k);
}

double psi_value(double t) { return t - std::floor(t) - 0.5; }

}  // namespace divsum
