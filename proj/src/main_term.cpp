#include "divsum/main_term.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "divsum/divisor.hpp"
#include "divsum/errors.hpp"
#include "divsum/parallel.hpp"

namespace divsum {

double CertifiedValue::lower() const {
  return std::nextafter(value.to_double(MPFR_RNDD) - error_bound, -INFINITY);
}

double CertifiedValue::upper() const {
  return std::nextafter(value.to_double(MPFR_RNDU) + error_bound, INFINITY);
}

namespace {

// k -> k^{-1/c} with reusable scratch space.
class InversePower {
 public:
  InversePower(const Exponent& c, mpfr_prec_t prec) : c_(c), t_(prec), inv_c_(prec) {
    if (!c.is_rational()) {
      c.nearest(inv_c_);
      mpfr_ui_div(inv_c_.get(), 1, inv_c_.get(), MPFR_RNDN);
    }
  }

  void operator()(std::uint64_t k, Real& out) {
    if (!c_.is_rational()) {
      mpfr_set_ui(t_.get(), k, MPFR_RNDN);
      mpfr_log(t_.get(), t_.get(), MPFR_RNDN);
      mpfr_mul(t_.get(), t_.get(), inv_c_.get(), MPFR_RNDN);
      mpfr_neg(t_.get(), t_.get(), MPFR_RNDN);
      mpfr_exp(out.get(), t_.get(), MPFR_RNDN);
      return;
    }
    // k^{-q/p} = 1 / rootn(k^q, p)
    if (c_.q() == 1) {
      mpfr_set_ui(t_.get(), k, MPFR_RNDN);
    } else {
      mpz_ui_pow_ui(kq_.get_mpz_t(), k, c_.q());
      mpfr_set_z(t_.get(), kq_.get_mpz_t(), MPFR_RNDN);
    }
    if (c_.p() != 1) mpfr_rootn_ui(t_.get(), t_.get(), c_.p(), MPFR_RNDN);
    mpfr_ui_div(out.get(), 1, t_.get(), MPFR_RNDN);
  }

 private:
  const Exponent& c_;
  Real t_;
  Real inv_c_;
  mpz_class kq_;
};

// sum_{k=a}^{b} d(k) (k^{-1/c} - (k+1)^{-1/c}), chunked, chunk results added in order.
Real dc_range(const Exponent& c, std::uint64_t a, std::uint64_t b, const MainTermOptions& opt) {
  const mpfr_prec_t prec = opt.precision;
  // Accumulators carry 64 guard bits over the term precision.
  const mpfr_prec_t acc_prec = prec + 64;
  auto chunks = parallel::split(a, b, opt.chunk);
  auto partials = parallel::map_chunks<Real>(chunks, [&](const parallel::Chunk& ch) {
    DivisorTable d = divisor_sieve(ch.lo, ch.hi);
    InversePower inv_pow(c, prec);
    Real sum(acc_prec), cur(prec), next(prec), diff(acc_prec);
    inv_pow(ch.lo, cur);
    for (std::uint64_t k = ch.lo; k <= ch.hi; ++k) {
      inv_pow(k + 1, next);
      mpfr_sub(diff.get(), cur.get(), next.get(), MPFR_RNDN);
      mpfr_mul_ui(diff.get(), diff.get(), d(k), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), diff.get(), MPFR_RNDN);
      mpfr_swap(cur.get(), next.get());
    }
    return sum;
  });
  Real total(acc_prec);
  for (const auto& p : partials) mpfr_add(total.get(), total.get(), p.get(), MPFR_RNDN);
  return total;
}

// Rounding envelope of a K-term partial sum: every term and every addition
// carries relative error O(2^-prec); terms are <= d(k), so D(K) dominates them.
double partial_rounding_envelope(std::uint64_t K, std::uint64_t D_K, mpfr_prec_t prec) {
  return std::ldexp(8.0 * (static_cast<double>(K) + 3.0) * static_cast<double>(D_K),
                    -static_cast<int>(prec));
}

double up(mpfr_srcptr v) { return mpfr_get_d(v, MPFR_RNDU); }

CertifiedValue certify(const Exponent& c, std::uint64_t K, const Real& partial,
                       const MainTermOptions& opt) {
  const std::uint64_t D_K = divisor_summatory(K);
  const mpfr_prec_t prec = opt.precision;
  Real lo(prec), hi(prec);
  detail::tail_enclosure(c, K, D_K, opt.divisor_envelope, lo, hi);

  CertifiedValue out;
  out.value = Real(prec);
  out.truncation_K = K;
  Real mid(prec), half(prec);
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_add(out.value.get(), partial.get(), mid.get(), MPFR_RNDN);
  mpfr_sub(half.get(), hi.get(), lo.get(), MPFR_RNDU);
  mpfr_div_2ui(half.get(), half.get(), 1, MPFR_RNDU);
  // Midpoint and final-addition rounding are below one ulp of the value each.
  const double ulp_slack = std::ldexp(std::fabs(out.value.to_double()) + 1.0, -static_cast<int>(prec) + 2);
  out.error_bound = up(half.get()) + partial_rounding_envelope(K, D_K, prec) + ulp_slack;
  return out;
}

}  // namespace

namespace detail {

void tail_enclosure(const Exponent& c, std::uint64_t K, std::uint64_t D_K, double envelope,
                    Real& lo, Real& hi) {
  const mpfr_prec_t prec = std::max(lo.precision(), hi.precision());
  auto R = [prec] { return Real(prec); };
  Real alpha = R(), A = R(), logA = R(), pw = R(), t = R(), gamma = R();
  mpq_class inv = 1 / c.as_rational();
  mpfr_set_q(alpha.get(), inv.get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui(A.get(), K + 1, MPFR_RNDN);
  mpfr_log(logA.get(), A.get(), MPFR_RNDN);
  mpfr_const_euler(gamma.get(), MPFR_RNDN);

  // A^{-alpha}
  Real a_pow = R();
  mpfr_neg(t.get(), alpha.get(), MPFR_RNDN);
  mpfr_pow(a_pow.get(), A.get(), t.get(), MPFR_RNDN);
  Real a_pow1 = R();  // A^{-alpha-1}
  mpfr_div(a_pow1.get(), a_pow.get(), A.get(), MPFR_RNDN);
  Real a_powh = R();  // A^{-alpha-1/2}
  mpfr_sqrt(t.get(), A.get(), MPFR_RNDN);
  mpfr_div(a_powh.get(), a_pow.get(), t.get(), MPFR_RNDN);

  Real ap1 = R();  // alpha + 1
  mpfr_add_ui(ap1.get(), alpha.get(), 1, MPFR_RNDN);

  // Boundary term -D(K) w(K+1), w(t) = alpha t^{-alpha-1}.
  Real boundary = R();
  mpfr_mul(boundary.get(), alpha.get(), a_pow1.get(), MPFR_RNDN);
  mpfr_mul_ui(boundary.get(), boundary.get(), D_K, MPFR_RNDN);
  mpfr_neg(boundary.get(), boundary.get(), MPFR_RNDN);

  // I1 = (alpha+1) A^{-alpha} (log A + 1/alpha)
  Real I1 = R();
  mpfr_ui_div(t.get(), 1, alpha.get(), MPFR_RNDN);
  mpfr_add(t.get(), t.get(), logA.get(), MPFR_RNDN);
  mpfr_mul(I1.get(), ap1.get(), a_pow.get(), MPFR_RNDN);
  mpfr_mul(I1.get(), I1.get(), t.get(), MPFR_RNDN);
  // I2 = (alpha+1) A^{-alpha}
  Real I2 = R();
  mpfr_mul(I2.get(), ap1.get(), a_pow.get(), MPFR_RNDN);
  // I3 = alpha (alpha+1) A^{-alpha-1/2} / (alpha + 1/2)
  Real I3 = R();
  mpfr_mul(I3.get(), alpha.get(), ap1.get(), MPFR_RNDN);
  mpfr_mul(I3.get(), I3.get(), a_powh.get(), MPFR_RNDN);
  mpfr_set_d(t.get(), 0.5, MPFR_RNDN);
  mpfr_add(t.get(), t.get(), alpha.get(), MPFR_RNDN);
  mpfr_div(I3.get(), I3.get(), t.get(), MPFR_RNDN);
  // I4 = alpha A^{-alpha-1} (log A + 1/(alpha+1))
  Real I4 = R();
  mpfr_ui_div(t.get(), 1, ap1.get(), MPFR_RNDN);
  mpfr_add(t.get(), t.get(), logA.get(), MPFR_RNDN);
  mpfr_mul(I4.get(), alpha.get(), a_pow1.get(), MPFR_RNDN);
  mpfr_mul(I4.get(), I4.get(), t.get(), MPFR_RNDN);
  // I5 = alpha A^{-alpha-1}
  Real I5 = R();
  mpfr_mul(I5.get(), alpha.get(), a_pow1.get(), MPFR_RNDN);

  // centre = boundary + I1 + (2 gamma - 1) I2
  Real centre = R();
  mpfr_mul_2ui(t.get(), gamma.get(), 1, MPFR_RNDN);
  mpfr_sub_ui(t.get(), t.get(), 1, MPFR_RNDN);
  mpfr_mul(pw.get(), t.get(), I2.get(), MPFR_RNDN);
  mpfr_add(centre.get(), boundary.get(), I1.get(), MPFR_RNDN);
  mpfr_add(centre.get(), centre.get(), pw.get(), MPFR_RNDN);

  // envelope term C * I3 and convexity correction I4 + 2 gamma I5
  Real env = R(), convex = R();
  mpfr_mul_d(env.get(), I3.get(), envelope, MPFR_RNDU);
  mpfr_mul_2ui(t.get(), gamma.get(), 1, MPFR_RNDN);
  mpfr_mul(convex.get(), t.get(), I5.get(), MPFR_RNDN);
  mpfr_add(convex.get(), convex.get(), I4.get(), MPFR_RNDN);

  // Each closed form above is accurate to a few ulps of the largest operand.
  Real slack = R();
  mpfr_abs(slack.get(), boundary.get(), MPFR_RNDU);
  mpfr_add(slack.get(), slack.get(), I1.get(), MPFR_RNDU);
  mpfr_add(slack.get(), slack.get(), I2.get(), MPFR_RNDU);
  mpfr_add(slack.get(), slack.get(), I3.get(), MPFR_RNDU);
  mpfr_add(slack.get(), slack.get(), I4.get(), MPFR_RNDU);
  mpfr_add(slack.get(), slack.get(), I5.get(), MPFR_RNDU);
  mpfr_mul_2si(slack.get(), slack.get(), -static_cast<long>(prec) + 10, MPFR_RNDU);

  mpfr_set_prec(lo.get(), prec);
  mpfr_set_prec(hi.get(), prec);
  mpfr_add(hi.get(), centre.get(), env.get(), MPFR_RNDU);
  mpfr_add(hi.get(), hi.get(), slack.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), centre.get(), env.get(), MPFR_RNDD);
  mpfr_sub(lo.get(), lo.get(), convex.get(), MPFR_RNDD);
  mpfr_sub(lo.get(), lo.get(), slack.get(), MPFR_RNDD);
  // Every tail term is positive.
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
}

}  // namespace detail

Real dc_partial(const Exponent& c, std::uint64_t K, const MainTermOptions& opt) {
  if (K == 0) throw DomainError("dc_partial: K must be >= 1");
  Real out(opt.precision);
  mpfr_set(out.get(), dc_range(c, 1, K, opt).get(), MPFR_RNDN);
  return out;
}

CertifiedValue dc_at(const Exponent& c, std::uint64_t K, const MainTermOptions& opt) {
  if (!c.is_rational()) throw DomainError("certified d_c needs a rational exponent");
  return certify(c, K, dc_partial(c, K, opt), opt);
}

CertifiedValue dc_constant(const Exponent& c, double target_error, const MainTermOptions& opt) {
  if (!(target_error > 0)) throw DomainError("dc_constant: target_error must be > 0");
  if (!c.is_rational()) throw DomainError("certified d_c needs a rational exponent");
  std::uint64_t K = std::max<std::uint64_t>(opt.initial_K, 1);
  Real partial = dc_range(c, 1, K, opt);
  for (;;) {
    CertifiedValue cert = certify(c, K, partial, opt);
    if (cert.error_bound <= target_error) return cert;
    if (K > opt.max_K / 2)
      throw ResourceError("dc_constant: bound " + std::to_string(cert.error_bound) +
                          " at K=" + std::to_string(K) + " still above target " +
                          std::to_string(target_error));
    Real more = dc_range(c, K + 1, 2 * K, opt);
    mpfr_add(partial.get(), partial.get(), more.get(), MPFR_RNDN);
    K *= 2;
  }
}

CertifiedValue main_term(std::uint64_t x, const Exponent& c, const CertifiedValue& dc,
                         const MainTermOptions& opt) {
  if (x == 0) throw DomainError("main_term: x must be >= 1");
  if (!c.is_rational()) throw DomainError("certified main term needs a rational exponent");
  const mpfr_prec_t prec = opt.precision;
  Real xc(prec);
  mpz_class xq;
  mpz_ui_pow_ui(xq.get_mpz_t(), x, c.q());
  mpfr_set_z(xc.get(), xq.get_mpz_t(), MPFR_RNDN);
  if (c.p() != 1) mpfr_rootn_ui(xc.get(), xc.get(), c.p(), MPFR_RNDN);

  CertifiedValue out;
  out.value = Real(prec);
  out.truncation_K = dc.truncation_K;
  mpfr_mul(out.value.get(), dc.value.get(), xc.get(), MPFR_RNDN);
  Real scaled(prec);
  mpfr_mul_d(scaled.get(), xc.get(), dc.error_bound, MPFR_RNDU);
  // x^{1/c} carries <= 2 roundings, the product one more.
  const double rounding =
      std::ldexp(std::fabs(out.value.to_double()) + 1.0, -static_cast<int>(prec) + 3);
  out.error_bound = std::nextafter(up(scaled.get()) * (1.0 + std::ldexp(1.0, -static_cast<int>(prec) + 3)) + rounding, INFINITY);
  return out;
}

CertifiedValue main_term(std::uint64_t x, const Exponent& c, double target_error,
                         const MainTermOptions& opt) {
  return main_term(x, c, dc_constant(c, target_error, opt), opt);
}

}  // namespace divsum
