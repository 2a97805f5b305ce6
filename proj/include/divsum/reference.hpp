#pragma once

// Serial, deliberately plain versions of the parallel kernels. Tests use them
// as oracles and bench/ measures the kernels against them.

#include <complex>
#include <cstdint>
#include <vector>

#include "divsum/divisor.hpp"
#include "divsum/exponent.hpp"
#include "divsum/harmonic.hpp"
#include "divsum/int128.hpp"
#include "divsum/real.hpp"

namespace divsum::reference {

/// Pointwise divisor_count on every entry.
DivisorTable divisor_table(std::uint64_t lo, std::uint64_t hi);

/// Multiple-counting sieve on [1, n]: every q adds one to each multiple.
std::vector<std::uint32_t> divisor_prefix(std::uint64_t n);

/// The literal n-loop, one exact floor per n.
u128 sum_naive(std::uint64_t x, const Exponent& c);

/// Single running MPFR sum, pointwise d(k), pow per term.
Real dc_partial(const Exponent& c, std::uint64_t K, mpfr_prec_t precision = kDefaultPrecision);

/// Sequential long double accumulation of the dyadic exponential sum.
std::complex<double> exp_sum(const ExpSumSpec& spec, mpfr_prec_t precision = kDefaultPrecision);

/// Fejer bound by the closed form (sin(pi (H+1) x) / sin(pi x))^2 / (2 (H+1)^2).
double fejer_closed_form(double x, int H);

}  // namespace divsum::reference
