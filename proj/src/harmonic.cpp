#include "divsum/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <gmpxx.h>

#include "divsum/divisor.hpp"
#include "divsum/errors.hpp"
#include "divsum/exact_floor.hpp"
#include "divsum/parallel.hpp"

namespace divsum {

using std::numbers::pi;

double vaaler_phi(double t) {
  const double a = std::fabs(t);
  if (!(a < 1.0)) throw DomainError("vaaler_phi: |t| must be < 1");
  double pt_cot;
  if (a < 0x1p-10) {
    // pi t cot(pi t) = 1 - u/3 - u^2/45 - 2u^3/945 - ...,  u = (pi t)^2
    const double u = (pi * a) * (pi * a);
    pt_cot = 1.0 - u / 3.0 - u * u / 45.0 - 2.0 * u * u * u / 945.0;
  } else {
    pt_cot = pi * a / std::tan(pi * a);
  }
  return (1.0 - a) * pt_cot + a;
}

TrigApprox::TrigApprox(int H_) : H(H_) {
  if (H < 1) throw DomainError("TrigApprox: H must be >= 1");
  taper.resize(static_cast<std::size_t>(H));
  for (int h = 1; h <= H; ++h)
    taper[static_cast<std::size_t>(h - 1)] = vaaler_phi(static_cast<double>(h) / (H + 1));
}

std::complex<double> TrigApprox::coefficient(int h) const {
  if (h == 0 || std::abs(h) > H) throw DomainError("TrigApprox: coefficient index out of range");
  // -Phi / (2 pi i h) = i Phi / (2 pi h)
  return {0.0, taper[static_cast<std::size_t>(std::abs(h) - 1)] / (2.0 * pi * h)};
}

double TrigApprox::operator()(double x) const {
  const double r = x - std::floor(x);
  double s = 0.0;
  for (int h = H; h >= 1; --h)
    s += taper[static_cast<std::size_t>(h - 1)] * std::sin(2.0 * pi * h * r) / (pi * h);
  return -s;
}

double vaaler_psi_approx(double x, int H) { return TrigApprox(H)(x); }

double fejer_bound(double x, int H) {
  if (H < 1) throw DomainError("fejer_bound: H must be >= 1");
  const double r = x - std::floor(x);
  double s = 0.0;
  for (int h = H; h >= 1; --h)
    s += (1.0 - static_cast<double>(h) / (H + 1)) * std::cos(2.0 * pi * h * r);
  return std::max(0.0, (1.0 + 2.0 * s) / (2.0 * H + 2.0));
}

namespace {

// y = (x / m)^{1/c} at the precision of `y`.
class RootEvaluator {
 public:
  RootEvaluator(std::uint64_t x, const Exponent& c, mpfr_prec_t prec)
      : x_(x), c_(c), num_(prec), den_(prec), inv_c_(prec) {
    if (c.is_rational()) {
      mpz_ui_pow_ui(xq_.get_mpz_t(), x, c.q());
      mpfr_set_z(num_.get(), xq_.get_mpz_t(), MPFR_RNDN);
    } else {
      c.nearest(inv_c_);
      mpfr_ui_div(inv_c_.get(), 1, inv_c_.get(), MPFR_RNDN);
    }
  }

  void operator()(std::uint64_t m, Real& y) {
    if (c_.is_rational()) {
      mpz_ui_pow_ui(mq_.get_mpz_t(), m, c_.q());
      mpfr_set_z(den_.get(), mq_.get_mpz_t(), MPFR_RNDN);
      mpfr_div(y.get(), num_.get(), den_.get(), MPFR_RNDN);
      if (c_.p() != 1) mpfr_rootn_ui(y.get(), y.get(), c_.p(), MPFR_RNDN);
      return;
    }
    mpfr_set_ui(y.get(), x_, MPFR_RNDN);
    mpfr_div_ui(y.get(), y.get(), m, MPFR_RNDN);
    mpfr_pow(y.get(), y.get(), inv_c_.get(), MPFR_RNDN);
  }

 private:
  std::uint64_t x_;
  const Exponent& c_;
  mpz_class xq_, mq_;
  Real num_, den_, inv_c_;
};

void check_delta(int delta) {
  if (delta != 0 && delta != 1) throw DomainError("delta must be 0 or 1");
}

std::complex<double> exp_sum_at(const ExpSumSpec& s, mpfr_prec_t prec, std::uint64_t block) {
  auto blocks = parallel::split(s.D + 1, 2 * s.D, block);
  auto partials = parallel::map_chunks<std::complex<double>>(blocks, [&](const parallel::Chunk& b) {
    DivisorTable d = divisor_sieve(b.lo, b.hi);
    RootEvaluator root(s.x, s.c, prec);
    Real y(prec);
    double re = 0.0, im = 0.0;
    for (std::uint64_t k = b.lo; k <= b.hi; ++k) {
      root(k + static_cast<std::uint64_t>(s.delta), y);
      mpfr_mul_ui(y.get(), y.get(), s.h, MPFR_RNDN);
      mpfr_frac(y.get(), y.get(), MPFR_RNDN);
      const double angle = 2.0 * pi * y.to_double();
      re += d(k) * std::cos(angle);
      im += d(k) * std::sin(angle);
    }
    return std::complex<double>(re, im);
  });
  return parallel::tree_reduce(std::move(partials), std::complex<double>{},
                               [](std::complex<double> a, std::complex<double> b) { return a + b; });
}

}  // namespace

double psi_sum(std::uint64_t x, const Exponent& c, std::uint64_t D, int delta,
               const HarmonicOptions& opt) {
  check_delta(delta);
  if (D < 1) throw DomainError("psi_sum: D must be >= 1");
  if (2 * D > x) throw DomainError("psi_sum: need 2D <= x");
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(opt.precision, 128);
  FloorEvaluator F(x, c);
  auto blocks = parallel::split(D + 1, 2 * D, opt.block);
  auto partials = parallel::map_chunks<double>(blocks, [&](const parallel::Chunk& b) {
    DivisorTable d = divisor_sieve(b.lo, b.hi);
    RootEvaluator root(x, c, prec);
    Real y(prec);
    double s = 0.0;
    for (std::uint64_t k = b.lo; k <= b.hi; ++k) {
      const std::uint64_t m = k + static_cast<std::uint64_t>(delta);
      root(m, y);
      if (c.is_rational()) {
        // Exact integer part; the MPFR value only supplies the fraction.
        mpfr_sub_ui(y.get(), y.get(), F.inv_pow(m), MPFR_RNDN);
      } else {
        mpfr_frac(y.get(), y.get(), MPFR_RNDN);
      }
      double frac = std::clamp(y.to_double(), 0.0, std::nextafter(1.0, 0.0));
      s += d(k) * (frac - 0.5);
    }
    return s;
  });
  return parallel::tree_reduce(std::move(partials), 0.0, [](double a, double b) { return a + b; });
}

ExpSumResult exp_sum_divisor(const ExpSumSpec& spec, const HarmonicOptions& opt) {
  check_delta(spec.delta);
  if (spec.D < 2) throw DomainError("exp_sum_divisor: D must be >= 2");
  if (spec.h < 1) throw DomainError("exp_sum_divisor: h must be >= 1");
  if (spec.x < 1) throw DomainError("exp_sum_divisor: x must be >= 1");
  mpfr_prec_t prec = std::max<mpfr_prec_t>(opt.precision, 128);
  ExpSumResult r;
  r.value = exp_sum_at(spec, prec, opt.block);
  // Heavy cancellation: phase errors matter relatively more, recompute finer.
  if (std::abs(r.value) < std::pow(static_cast<double>(spec.D), 0.25)) {
    prec *= 2;
    r.value = exp_sum_at(spec, prec, opt.block);
  }
  r.magnitude = std::abs(r.value);
  r.precision = prec;
  return r;
}

HRange h_range(std::uint64_t D, std::uint64_t x, const Exponent& c) {
  if (D < 1 || x < 1) throw DomainError("h_range: D and x must be >= 1");
  const double alpha = 1.0 / c.to_double();
  const double lD = std::log(static_cast<double>(D)), lx = std::log(static_cast<double>(x));
  HRange r;
  r.lower = std::max(1.0, std::exp((0.75 + alpha) * lD - alpha * lx));
  r.upper = std::exp((1.5 + alpha) * lD - alpha * lx);
  return r;
}

JutilaRatio jutila_ratio(const ExpSumSpec& spec, const HarmonicOptions& opt) {
  const double alpha = 1.0 / spec.c.to_double();
  JutilaRatio r;
  r.magnitude = exp_sum_divisor(spec, opt).magnitude;
  r.denominator = std::pow(static_cast<double>(spec.D), 0.5 - alpha / 3.0) *
                  std::cbrt(static_cast<double>(spec.h)) *
                  std::pow(static_cast<double>(spec.x), alpha / 3.0);
  r.ratio = r.magnitude / r.denominator;
  r.in_range = h_range(spec.D, spec.x, spec.c).contains(static_cast<double>(spec.h));
  return r;
}

std::vector<std::uint64_t> sample_h(const HRange& range, int count) {
  std::vector<std::uint64_t> out;
  if (range.empty() || count < 1) return out;
  const double lo_d = std::ceil(range.lower), hi_d = std::floor(range.upper);
  if (lo_d > hi_d) return out;
  const auto lo = static_cast<std::uint64_t>(lo_d), hi = static_cast<std::uint64_t>(hi_d);
  if (hi - lo + 1 <= static_cast<std::uint64_t>(count)) {
    for (std::uint64_t h = lo; h <= hi; ++h) out.push_back(h);
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    auto h = static_cast<std::uint64_t>(std::llround(lo_d * std::pow(hi_d / lo_d, t)));
    h = std::clamp(h, lo, hi);
    if (!out.empty()) h = std::max(h, out.back() + 1);
    out.push_back(h);
  }
  // Pull back from the top if bumping pushed past hi.
  for (int i = count - 1; i >= 0; --i) {
    const std::uint64_t cap = hi - static_cast<std::uint64_t>(count - 1 - i);
    out[static_cast<std::size_t>(i)] = std::min(out[static_cast<std::size_t>(i)], cap);
  }
  return out;
}

}  // namespace divsum
