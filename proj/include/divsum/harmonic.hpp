#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "divsum/exponent.hpp"
#include "divsum/real.hpp"

namespace divsum {

/// Vaaler taper Phi(t) = pi t (1 - |t|) cot(pi t) + |t| on |t| < 1, Phi(0) = 1.
double vaaler_phi(double t);

/// Coefficients of the degree-H trigonometric approximation to psi:
/// c_h = -Phi(h/(H+1)) / (2 pi i h) for 1 <= |h| <= H.
struct TrigApprox {
  int H = 0;
  /// Entry h - 1 holds Phi(h/(H+1)) for h = 1..H; the c_{-h} are conjugates.
  std::vector<double> taper;

  explicit TrigApprox(int H);
  std::complex<double> coefficient(int h) const;
  /// Real value -sum_{h=1}^{H} Phi(h/(H+1)) sin(2 pi h x) / (pi h).
  double operator()(double x) const;
};

/// TrigApprox(H)(x).
double vaaler_psi_approx(double x, int H);

/// (1/(2H+2)) sum_{|h| <= H} (1 - |h|/(H+1)) e(hx), evaluated as a real
/// cosine sum and clamped at 0.
double fejer_bound(double x, int H);

/// Dyadic exponential sum sum_{D < k <= 2D} d(k) e(h x^{1/c} / (k + delta)^{1/c}).
struct ExpSumSpec {
  std::uint64_t D = 2;
  std::uint64_t h = 1;
  std::uint64_t x = 1;
  Exponent c = Exponent::rational(1, 1);
  int delta = 0;
};

struct ExpSumResult {
  std::complex<double> value;
  double magnitude = 0.0;
  mpfr_prec_t precision = 0;  ///< phase precision actually used
};

struct HarmonicOptions {
  mpfr_prec_t precision = kDefaultPrecision;
  std::uint64_t block = 4096;
};

/// sum_{D < k <= 2D} d(k) psi((x/(k+delta))^{1/c}). For rational c the
/// integer part of each argument is exact.
double psi_sum(std::uint64_t x, const Exponent& c, std::uint64_t D, int delta,
               const HarmonicOptions& opt = {});

/// Phases at >= 128 bits, reduced mod 1 before the cosine/sine; block partials
/// are combined in a fixed tree. Precision is doubled once if |sum| < D^{1/4}.
ExpSumResult exp_sum_divisor(const ExpSumSpec& spec, const HarmonicOptions& opt = {});

/// Admissible h-window (max(1, D^{3/4+1/c}/x^{1/c}), D^{3/2+1/c}/x^{1/c}).
struct HRange {
  double lower = 1.0;
  double upper = 0.0;
  bool empty() const { return lower > upper; }
  bool contains(double h) const { return h >= lower && h <= upper; }
};

HRange h_range(std::uint64_t D, std::uint64_t x, const Exponent& c);

struct JutilaRatio {
  double ratio = 0.0;
  double magnitude = 0.0;
  double denominator = 0.0;  ///< D^{1/2 - 1/(3c)} h^{1/3} x^{1/(3c)}
  bool in_range = false;
};

/// |exp_sum_divisor(spec)| / (D^{1/2-1/(3c)} h^{1/3} x^{1/(3c)}).
JutilaRatio jutila_ratio(const ExpSumSpec& spec, const HarmonicOptions& opt = {});

/// Up to `count` distinct integers spread geometrically over the range.
std::vector<std::uint64_t> sample_h(const HRange& range, int count);

}  // namespace divsum
