#include "divsum/exponent_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "divsum/errors.hpp"
#include "divsum/parallel.hpp"

namespace divsum {

namespace {

void require_positive(const mpq_class& c) {
  if (sgn(c) <= 0) throw DomainError("exponent must be positive");
}

mpz_class to_mpz(u128 v) {
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
  mpz_class z;
  mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
  return z;
}

mpq_class canon(mpq_class v) {
  v.canonicalize();
  return v;
}

}  // namespace

ThetaBranches theta_branches(const mpq_class& c) {
  require_positive(c);
  ThetaBranches b;
  b.new_small = canon((2 * c + 2) / (2 * c * c + 5 * c + 2));
  b.new_large = canon(5 / (5 * c + 6));
  b.feng_small = canon(2 / (3 * c + 2));
  b.feng_large = canon(11 / (11 * c + 12));
  return b;
}

mpq_class theta_new(const mpq_class& c) {
  auto b = theta_branches(c);
  return c < mpq_class(2, 3) ? b.new_small : b.new_large;
}

mpq_class theta_feng(const mpq_class& c) {
  auto b = theta_branches(c);
  return c < mpq_class(2, 11) ? b.feng_small : b.feng_large;
}

double theta_new(double c) {
  if (!(c > 0)) throw DomainError("exponent must be positive");
  return c < 2.0 / 3.0 ? (2 * c + 2) / (2 * c * c + 5 * c + 2) : 5 / (5 * c + 6);
}

double theta_feng(double c) {
  if (!(c > 0)) throw DomainError("exponent must be positive");
  return c < 2.0 / 11.0 ? 2 / (3 * c + 2) : 11 / (11 * c + 12);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kNewBetter: return "new_better";
    case Verdict::kEqual: return "equal";
    case Verdict::kFengBetter: return "feng_better";
  }
  return "?";
}

Verdict improvement_region_check(const mpq_class& c) {
  const int cmp_result = cmp(theta_new(c), theta_feng(c));
  if (cmp_result < 0) return Verdict::kNewBetter;
  if (cmp_result == 0) return Verdict::kEqual;
  return Verdict::kFengBetter;
}

ErrorSample error_term(std::uint64_t x, const Exponent& c, const CertifiedValue& dc) {
  if (x < 2) throw DomainError("error_term: x must be >= 2");
  const SumResult blocked = sum_blocked(x, c, optimal_N(x, c));
  const SumResult direct = sum_direct(x, c);
  if (blocked.value != direct.value)
    throw ComputationError("error_term: direct and blocked sums disagree at x=" +
                           std::to_string(x) + " (" + to_string(direct.value) + " vs " +
                           to_string(blocked.value) + ")");
  CertifiedValue main = main_term(x, c, dc);
  if (!(main.error_bound < 0.5))
    throw PrecisionError("error_term: main-term bound " + std::to_string(main.error_bound) +
                         " at x=" + std::to_string(x) + " is not below 1/2; lower target_error");
  ErrorSample s;
  s.x = x;
  s.c = c;
  s.sum_value = blocked.value;
  s.main_value = main.value.to_double();
  s.main_bound = main.error_bound;
  Real e(main.value.precision()), sv(main.value.precision());
  mpz_class sum_z = to_mpz(blocked.value);
  mpfr_set_z(sv.get(), sum_z.get_mpz_t(), MPFR_RNDN);
  mpfr_sub(e.get(), sv.get(), main.value.get(), MPFR_RNDN);
  s.error = e.to_double();
  s.abs_error = std::fabs(s.error);
  return s;
}

ErrorSample error_term(std::uint64_t x, const Exponent& c, double target_error) {
  return error_term(x, c, dc_constant(c, target_error));
}

FitResult exponent_fit(const std::vector<ErrorSample>& samples) {
  if (samples.size() < 5) throw DomainError("exponent_fit: need at least 5 samples");
  auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                      [](const auto& a, const auto& b) { return a.x < b.x; });
  if (static_cast<double>(hi->x) < 100.0 * static_cast<double>(lo->x))
    throw DomainError("exponent_fit: samples must span at least two decades in x");
  FitResult r;
  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& s : samples) {
    if (s.abs_error < 1.0) ++r.floored;
    const double u = std::log(static_cast<double>(s.x));
    const double v = std::log(std::max(s.abs_error, 1.0));
    sx += u;
    sy += v;
    sxx += u * u;
    sxy += u * v;
    syy += v * v;
  }
  const double cov = sxy - sx * sy / n, varx = sxx - sx * sx / n, vary = syy - sy * sy / n;
  r.slope = cov / varx;
  r.intercept = (sy - r.slope * sx) / n;
  r.r_squared = vary > 0 ? std::clamp(cov * cov / (varx * vary), 0.0, 1.0) : 1.0;
  r.samples_used = samples.size();
  return r;
}

std::vector<ErrorSample> scan(const std::vector<std::uint64_t>& x_grid, const Exponent& c,
                              double target_error) {
  if (!std::is_sorted(x_grid.begin(), x_grid.end()))
    throw DomainError("scan: grid must be sorted ascending");
  if (x_grid.empty()) return {};
  std::vector<std::uint64_t> unique(x_grid);
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  const CertifiedValue dc = dc_constant(c, target_error);
  std::vector<ErrorSample> computed(unique.size());
  parallel::for_each_index(unique.size(),
                           [&](std::size_t i) { computed[i] = error_term(unique[i], c, dc); });
  std::vector<ErrorSample> out;
  out.reserve(x_grid.size());
  std::size_t j = 0;
  for (std::uint64_t x : x_grid) {
    while (unique[j] != x) ++j;
    out.push_back(computed[j]);
  }
  return out;
}

std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi, int points) {
  if (lo < 1 || hi < lo || points < 1) throw DomainError("geometric_grid: bad range");
  std::vector<std::uint64_t> out;
  if (points == 1) return {lo};
  const double ratio = std::log(static_cast<double>(hi) / static_cast<double>(lo));
  for (int i = 0; i < points; ++i) {
    auto v = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(lo) * std::exp(ratio * i / (points - 1))));
    out.push_back(std::clamp(v, lo, hi));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace divsum
