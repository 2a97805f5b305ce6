#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <mpfr.h>

#include "divsum/errors.hpp"
#include "divsum/harmonic.hpp"
#include "divsum/parallel.hpp"
#include "divsum/reference.hpp"
#include "oracles.hpp"

namespace divsum {
namespace {

using std::numbers::pi;

double psi(double t) { return t - std::floor(t) - 0.5; }

TEST(VaalerPhi, Values) {
  EXPECT_DOUBLE_EQ(vaaler_phi(0.0), 1.0);
  // t = 1/2: cot = 0, so Phi = 1/2.
  EXPECT_NEAR(vaaler_phi(0.5), 0.5, 1e-15);
  // t = 1/4: pi/4 * 3/4 * 1 + 1/4.
  EXPECT_NEAR(vaaler_phi(0.25), 3 * pi / 16 + 0.25, 1e-15);
  for (double t = -0.999; t < 1.0; t += 0.0137) {
    EXPECT_NEAR(vaaler_phi(t), vaaler_phi(-t), 1e-15);
    EXPECT_GT(vaaler_phi(t), 0.0);
    EXPECT_LE(vaaler_phi(t), 1.0);
  }
  // Small-argument branch joins the direct formula.
  for (double t : {std::ldexp(1.0, -11), std::ldexp(0.999, -10), 1e-5}) {
    const double direct = pi * t * (1 - t) / std::tan(pi * t) + t;
    EXPECT_NEAR(vaaler_phi(t), direct, 1e-14);
  }
}

TEST(VaalerApprox, OddAndVanishesAtIntegersAndHalf) {
  for (int H : {1, 4, 16, 64}) {
    EXPECT_NEAR(vaaler_psi_approx(0.0, H), 0.0, 1e-15);
    EXPECT_NEAR(vaaler_psi_approx(0.5, H), 0.0, 1e-13);
    for (double x = 0.01; x < 1; x += 0.07)
      EXPECT_NEAR(vaaler_psi_approx(x, H), -vaaler_psi_approx(1 - x, H), 1e-13);
  }
  EXPECT_THROW(TrigApprox(0), DomainError);
}

TEST(VaalerApprox, CoefficientsMatchRealForm) {
  TrigApprox a(8);
  const double x = 0.3141;
  std::complex<double> s = 0;
  for (int h = 1; h <= 8; ++h) {
    const std::complex<double> e = std::polar(1.0, 2 * pi * h * x);
    s += a.coefficient(h) * e + std::conj(a.coefficient(h)) * std::conj(e);
  }
  EXPECT_NEAR(s.imag(), 0.0, 1e-15);
  EXPECT_NEAR(s.real(), a(x), 1e-14);
}

TEST(Fejer, ClosedFormAndExamples) {
  EXPECT_NEAR(fejer_bound(0.0, 4), 5.0 / 10.0, 1e-15);
  EXPECT_NEAR(fejer_bound(0.5, 1), 0.0, 1e-15);
  for (int H : {1, 3, 16, 255})
    for (double x = 0.003; x < 1; x += 0.0191)
      EXPECT_NEAR(fejer_bound(x, H), reference::fejer_closed_form(x, H), 1e-13) << H;
}

TEST(Fejer, MajorisesTheApproximationError) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int H : {2, 4, 16, 64, 256}) {
    for (int i = 0; i < 3000; ++i) {
      const double x = u(rng);
      ASSERT_LE(std::fabs(psi(x) - vaaler_psi_approx(x, H)), fejer_bound(x, H) + 1e-12)
          << "H=" << H << " x=" << x;
    }
  }
}

TEST(Fejer, MeanErrorShrinksWithH) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(4000);
  for (auto& x : xs) x = u(rng);
  double prev = INFINITY;
  for (int H : {4, 16, 64, 256}) {
    double mean = 0;
    for (double x : xs) mean += std::fabs(psi(x) - vaaler_psi_approx(x, H));
    mean /= xs.size();
    EXPECT_LT(mean, prev) << H;
    prev = mean;
  }
}

// psi((x/(k+delta))^{1/c}) brute force at 512 bits.
double psi_sum_oracle(std::uint64_t x, long p, long q, std::uint64_t D, int delta) {
  mpfr_t t, f;
  mpfr_inits2(512, t, f, nullptr);
  double s = 0;
  for (std::uint64_t k = D + 1; k <= 2 * D; ++k) {
    mpfr_set_ui(t, x, MPFR_RNDN);
    mpfr_div_ui(t, t, k + delta, MPFR_RNDN);
    mpfr_set_si(f, q, MPFR_RNDN);
    mpfr_div_si(f, f, p, MPFR_RNDN);
    mpfr_pow(t, t, f, MPFR_RNDN);
    mpfr_frac(t, t, MPFR_RNDN);
    s += oracle::divisors_enumerated(k) * (mpfr_get_d(t, MPFR_RNDN) - 0.5);
  }
  mpfr_clears(t, f, nullptr);
  return s;
}

TEST(PsiSum, MatchesBruteForce) {
  struct Case { std::uint64_t x; long p, q; std::uint64_t D; int delta; };
  for (const auto& cs : {Case{100000, 1, 1, 100, 0}, Case{100000, 1, 1, 100, 1},
                         Case{987654, 3, 2, 50, 0}, Case{1000000, 2, 1, 300, 1},
                         Case{5000, 1, 2, 20, 0}}) {
    const double got = psi_sum(cs.x, Exponent::rational(cs.p, cs.q), cs.D, cs.delta);
    EXPECT_NEAR(got, psi_sum_oracle(cs.x, cs.p, cs.q, cs.D, cs.delta), 1e-9)
        << cs.x << " " << cs.p << "/" << cs.q;
  }
}

TEST(PsiSum, TrivialBoundAndPreconditions) {
  const std::uint64_t D = 500;
  std::uint64_t total = 0;
  for (std::uint64_t k = D + 1; k <= 2 * D; ++k) total += oracle::divisors_enumerated(k);
  EXPECT_LE(std::fabs(psi_sum(10'000'000, Exponent::rational(1, 1), D, 0)), 0.5 * total);
  EXPECT_THROW(psi_sum(100, Exponent::rational(1, 1), 60, 0), DomainError);
  EXPECT_THROW(psi_sum(100, Exponent::rational(1, 1), 10, 2), DomainError);
}

TEST(ExpSum, AgreesWithReference) {
  for (auto c : {Exponent::rational(1, 1), Exponent::rational(3, 2), Exponent::rational(1, 2)}) {
    for (int delta : {0, 1}) {
      ExpSumSpec spec{2000, 7, 10'000'000, c, delta};
      const auto got = exp_sum_divisor(spec);
      const auto want = reference::exp_sum(spec);
      EXPECT_NEAR(std::abs(got.value - want), 0.0, 1e-7) << c.str();
      EXPECT_NEAR(got.magnitude, std::abs(got.value), 1e-12);
    }
  }
}

TEST(ExpSum, TriangleBoundAndScaling) {
  ExpSumSpec spec{1000, 3, 123'456'789, Exponent::rational(1, 1), 0};
  const auto a = exp_sum_divisor(spec);
  std::uint64_t total = 0;
  for (std::uint64_t k = 1001; k <= 2000; ++k) total += oracle::divisors_enumerated(k);
  EXPECT_LE(a.magnitude, static_cast<double>(total) + 1e-9);
  // h x^{1/c} scales jointly for c = 1: (h, x) and (1, h x) give the same sum.
  ExpSumSpec joint{1000, 1, 3 * 123'456'789ULL, Exponent::rational(1, 1), 0};
  EXPECT_NEAR(std::abs(exp_sum_divisor(joint).value - a.value), 0.0, 1e-8);
}

TEST(ExpSum, ThreadInvariant) {
  ExpSumSpec spec{30000, 5, 100'000'000, Exponent::rational(1, 1), 0};
  HarmonicOptions opt;
  opt.block = 1000;
  parallel::set_threads(1);
  auto a = exp_sum_divisor(spec, opt);
  parallel::set_threads(4);
  auto b = exp_sum_divisor(spec, opt);
  parallel::set_threads(1);
  EXPECT_EQ(a.value, b.value);
}

TEST(HRange, Endpoints) {
  const Exponent one = Exponent::rational(1, 1);
  HRange r = h_range(10000, 100'000'000, one);
  EXPECT_DOUBLE_EQ(r.lower, 1.0);      // 10^7 / 10^8 clamps to 1
  EXPECT_NEAR(r.upper, 100.0, 1e-10);  // 10^10 / 10^8
  EXPECT_TRUE(r.contains(100.0));
  EXPECT_FALSE(r.contains(101.0));
  EXPECT_TRUE(h_range(1000, 100'000'000, one).empty());
  HRange big = h_range(100000, 100'000'000, one);
  EXPECT_NEAR(big.lower, std::pow(10.0, 0.75), 1e-9);
}

TEST(Jutila, RatioDefinition) {
  ExpSumSpec spec{10000, 20, 100'000'000, Exponent::rational(1, 1), 0};
  JutilaRatio j = jutila_ratio(spec);
  const double den = std::pow(1e4, 0.5 - 1.0 / 3) * std::cbrt(20.0) * std::cbrt(1e8);
  EXPECT_NEAR(j.denominator / den, 1.0, 1e-12);
  EXPECT_NEAR(j.ratio * j.denominator, j.magnitude, 1e-9 * j.magnitude + 1e-12);
  EXPECT_TRUE(j.in_range);
  spec.h = 2000;
  EXPECT_FALSE(jutila_ratio(spec).in_range);
}

TEST(SampleH, DistinctInsideRange) {
  HRange r{10.0, 1000.0};
  auto hs = sample_h(r, 8);
  ASSERT_EQ(hs.size(), 8u);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    EXPECT_TRUE(r.contains(static_cast<double>(hs[i])));
    if (i) EXPECT_LT(hs[i - 1], hs[i]);
  }
  EXPECT_EQ(sample_h(HRange{3.5, 4.2}, 5), std::vector<std::uint64_t>{4});
  EXPECT_TRUE(sample_h(HRange{5.0, 4.0}, 5).empty());
}

}  // namespace
}  // namespace divsum
