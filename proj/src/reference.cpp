#include "divsum/reference.hpp"

#include <cmath>
#include <numbers>

#include <gmpxx.h>

#include "divsum/errors.hpp"
#include "divsum/exact_floor.hpp"

namespace divsum::reference {

DivisorTable divisor_table(std::uint64_t lo, std::uint64_t hi) {
  if (lo == 0 || lo > hi) throw DomainError("divisor_table: need 1 <= lo <= hi");
  DivisorTable t;
  t.lo = lo;
  t.hi = hi;
  t.values.reserve(hi - lo + 1);
  for (std::uint64_t n = lo; n <= hi; ++n) t.values.push_back(divisor_count(n));
  return t;
}

std::vector<std::uint32_t> divisor_prefix(std::uint64_t n) {
  std::vector<std::uint32_t> d(n + 1, 0);
  for (std::uint64_t q = 1; q <= n; ++q)
    for (std::uint64_t m = q; m <= n; m += q) ++d[m];
  return d;
}

u128 sum_naive(std::uint64_t x, const Exponent& c) {
  FloorEvaluator F(x, c);
  u128 s = 0;
  for (std::uint64_t n = 1;; ++n) {
    const std::uint64_t k = F.over_pow(n);
    if (k == 0) break;
    s += divisor_count(k);
  }
  return s;
}

Real dc_partial(const Exponent& c, std::uint64_t K, mpfr_prec_t precision) {
  Real sum(precision), a(precision), b(precision), e(precision), t(precision);
  if (c.is_rational()) {
    mpq_class r = -1 / c.as_rational();
    mpfr_set_q(e.get(), r.get_mpq_t(), MPFR_RNDN);
  } else {
    c.nearest(e);
    mpfr_si_div(e.get(), -1, e.get(), MPFR_RNDN);
  }
  auto power = [&](std::uint64_t k, Real& out) {
    mpfr_set_ui(t.get(), k, MPFR_RNDN);
    mpfr_pow(out.get(), t.get(), e.get(), MPFR_RNDN);
  };
  power(1, a);
  for (std::uint64_t k = 1; k <= K; ++k) {
    power(k + 1, b);
    mpfr_sub(t.get(), a.get(), b.get(), MPFR_RNDN);
    mpfr_mul_ui(t.get(), t.get(), divisor_count(k), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), t.get(), MPFR_RNDN);
    mpfr_swap(a.get(), b.get());
  }
  return sum;
}

std::complex<double> exp_sum(const ExpSumSpec& s, mpfr_prec_t precision) {
  Real base(precision), y(precision), inv_c(precision);
  s.c.nearest(inv_c);
  mpfr_ui_div(inv_c.get(), 1, inv_c.get(), MPFR_RNDN);
  long double re = 0, im = 0;
  for (std::uint64_t k = s.D + 1; k <= 2 * s.D; ++k) {
    mpfr_set_ui(base.get(), s.x, MPFR_RNDN);
    mpfr_div_ui(base.get(), base.get(), k + static_cast<std::uint64_t>(s.delta), MPFR_RNDN);
    mpfr_pow(y.get(), base.get(), inv_c.get(), MPFR_RNDN);
    mpfr_mul_ui(y.get(), y.get(), s.h, MPFR_RNDN);
    mpfr_frac(y.get(), y.get(), MPFR_RNDN);
    const long double angle = 2.0L * std::numbers::pi_v<long double> * mpfr_get_ld(y.get(), MPFR_RNDN);
    const auto d = static_cast<long double>(divisor_count(k));
    re += d * std::cos(angle);
    im += d * std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

double fejer_closed_form(double x, int H) {
  const double r = x - std::floor(x);
  const double s = std::sin(std::numbers::pi * r);
  if (std::fabs(s) < 1e-12) return 0.5;
  const double num = std::sin(std::numbers::pi * (H + 1) * r);
  return (num * num) / (s * s) / (2.0 * (H + 1) * (H + 1));
}

}  // namespace divsum::reference
