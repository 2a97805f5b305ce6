#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "divsum/exponent.hpp"
#include "divsum/floor_sum.hpp"
#include "divsum/main_term.hpp"

namespace divsum {

/// Improved error exponent:
/// (2c+2)/(2c^2+5c+2) for 0 < c < 2/3, 5/(5c+6) for c >= 2/3.
mpq_class theta_new(const mpq_class& c);
double theta_new(double c);
/// Feng's exponent: 2/(3c+2) for 0 < c < 2/11, 11/(11c+12) for c >= 2/11.
mpq_class theta_feng(const mpq_class& c);
double theta_feng(double c);

/// Both branches of each formula, evaluated regardless of the case split.
struct ThetaBranches {
  mpq_class new_small;  ///< (2c+2)/(2c^2+5c+2)
  mpq_class new_large;  ///< 5/(5c+6)
  mpq_class feng_small; ///< 2/(3c+2)
  mpq_class feng_large; ///< 11/(11c+12)
};
ThetaBranches theta_branches(const mpq_class& c);

enum class Verdict { kNewBetter, kEqual, kFengBetter };
const char* to_string(Verdict v);

/// Exact comparison of theta_new(c) against theta_feng(c).
Verdict improvement_region_check(const mpq_class& c);

/// E(x) = S_{d,c}(x) - d_c x^{1/c}.
struct ErrorSample {
  std::uint64_t x = 0;
  Exponent c = Exponent::rational(1, 1);
  u128 sum_value = 0;
  double main_value = 0.0;
  double main_bound = 0.0;
  double error = 0.0;
  double abs_error = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t samples_used = 0;
  /// Samples whose |E| was below 1 and floored to 1 before the log.
  std::size_t floored = 0;
};

/// Sum from sum_blocked at optimal_N, checked against sum_direct before the
/// subtraction. PrecisionError if the main-term bound is >= 1/2.
ErrorSample error_term(std::uint64_t x, const Exponent& c, const CertifiedValue& dc);
ErrorSample error_term(std::uint64_t x, const Exponent& c, double target_error);

/// Least squares of log max(|E|, 1) against log x. Needs >= 5 samples
/// spanning at least two decades.
FitResult exponent_fit(const std::vector<ErrorSample>& samples);

/// error_term on every grid point (ascending). Distinct x are computed once,
/// in parallel; output follows input order.
std::vector<ErrorSample> scan(const std::vector<std::uint64_t>& x_grid, const Exponent& c,
                              double target_error);

/// Geometric grid of `points` integers from lo to hi inclusive.
std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi, int points);

}  // namespace divsum
