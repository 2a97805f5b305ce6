#include "divsum/floor_sum.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "divsum/divisor.hpp"
#include "divsum/errors.hpp"
#include "divsum/parallel.hpp"

namespace divsum {

const char* to_string(SumMethod m) { return m == SumMethod::kDirect ? "direct" : "blocked"; }

namespace {

constexpr std::uint64_t kNMax = UINT64_MAX / 4;

// Largest m >= from with [x/m^c] >= k, given [x/from^c] >= k. Uses only
// FloorEvaluator::over_pow; `estimate` is a floating guess for the answer.
std::uint64_t run_end(const FloorEvaluator& F, std::uint64_t k, std::uint64_t from,
                      long double estimate, std::uint64_t& probes) {
  auto ok = [&](std::uint64_t m) {
    ++probes;
    return F.over_pow(m) >= k;
  };
  std::uint64_t m = from;
  if (estimate > static_cast<long double>(from))
    m = estimate >= static_cast<long double>(kNMax) ? kNMax : static_cast<std::uint64_t>(estimate);
  std::uint64_t lo, hi;  // ok(lo), !ok(hi)
  if (m == from || ok(m)) {
    lo = m;
    std::uint64_t step = 1;
    for (;;) {
      if (lo > kNMax - step) throw ResourceError("n-range exceeds 62 bits");
      if (!ok(lo + step)) {
        hi = lo + step;
        break;
      }
      lo += step;
      step *= 2;
    }
  } else {
    hi = m;
    std::uint64_t step = 1;
    for (;;) {
      if (hi - from <= step) {
        lo = from;
        break;
      }
      if (ok(hi - step)) {
        lo = hi - step;
        break;
      }
      hi -= step;
      step *= 2;
    }
  }
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

long double run_estimate(long double log_x, long double inv_c, std::uint64_t k) {
  return std::exp((log_x - std::log(static_cast<long double>(k))) * inv_c);
}

// Deterministic n-pieces: fixed-size at first, then doubling.
std::vector<parallel::Chunk> direct_pieces(std::uint64_t n_limit, std::uint64_t chunk) {
  std::vector<parallel::Chunk> out;
  for (std::uint64_t lo = 1; lo <= n_limit;) {
    std::uint64_t size = std::max(chunk, lo);
    std::uint64_t hi = (n_limit - lo < size - 1) ? n_limit : lo + size - 1;
    out.push_back({lo, hi});
    if (hi == n_limit) break;
    lo = hi + 1;
  }
  return out;
}

struct Partial {
  u128 value = 0;
  std::uint64_t work = 0;
};

}  // namespace

SumResult sum_direct(std::uint64_t x, const Exponent& c, const SumOptions& opt) {
  if (x == 0) throw DomainError("sum_direct: x must be >= 1");
  FloorEvaluator F(x, c, opt.floor);
  const long double log_x = std::log(static_cast<long double>(x));
  const long double inv_c = 1.0L / static_cast<long double>(c.to_double());

  std::uint64_t probes = 0;
  // Every n <= n_limit has [x/n^c] >= 1.
  const std::uint64_t n_limit = run_end(F, 1, 1, run_estimate(log_x, inv_c, 1), probes);

  auto pieces = direct_pieces(n_limit, opt.direct_chunk);
  auto partials = parallel::map_chunks<Partial>(pieces, [&](const parallel::Chunk& piece) {
    Partial part;
    std::uint64_t n = piece.lo;
    while (n <= piece.hi) {
      const std::uint64_t k = F.over_pow(n);
      ++part.work;
      std::uint64_t end = run_end(F, k, n, run_estimate(log_x, inv_c, k), part.work);
      end = std::min(end, piece.hi);
      part.value += static_cast<u128>(divisor_count(k)) * (end - n + 1);
      ++part.work;
      n = end + 1;
    }
    return part;
  });

  SumResult r;
  r.method = SumMethod::kDirect;
  r.x = x;
  r.c = c;
  r.n_limit = n_limit;
  r.work_units = probes;
  for (const auto& p : partials) {
    r.value += p.value;
    r.work_units += p.work;
  }
  return r;
}

SumResult sum_blocked(std::uint64_t x, const Exponent& c, std::uint64_t N,
                      const SumOptions& opt) {
  if (x == 0) throw DomainError("sum_blocked: x must be >= 1");
  const std::uint64_t n_max_split = max_split(x, c);
  if (N < 1 || N > n_max_split)
    throw DomainError("sum_blocked: N=" + std::to_string(N) + " outside [1, x^(1/(c+1))) = [1, " +
                      std::to_string(n_max_split + 1) + ")");
  FloorEvaluator F(x, c, opt.floor);
  const std::uint64_t n_limit = F.inv_pow(1);

  // S_1: n <= N directly.
  auto n_chunks = parallel::split(1, N, opt.direct_chunk);
  auto s1 = parallel::map_chunks<Partial>(n_chunks, [&](const parallel::Chunk& ch) {
    Partial part;
    for (std::uint64_t n = ch.lo; n <= ch.hi; ++n) {
      part.value += divisor_count(F.over_pow(n));
      part.work += 2;
    }
    return part;
  });

  // S_2: k = [x/n^c] for N < n <= n_limit, each n counted through
  // (inv(k+1), inv(k)] clamped to (N, n_limit].
  std::vector<Partial> s2;
  if (N < n_limit) {
    const std::uint64_t k_lo = F.over_pow(n_limit);
    const std::uint64_t k_hi = F.over_pow(N + 1);
    auto k_segments = parallel::split(k_lo, k_hi, opt.k_segment);
    SieveOptions sieve_opt;
    sieve_opt.segment_size = opt.k_segment;
    s2 = parallel::map_chunks<Partial>(k_segments, [&](const parallel::Chunk& seg) {
      Partial part;
      DivisorTable d = divisor_sieve(seg.lo, seg.hi, sieve_opt);
      std::uint64_t inv_k = F.inv_pow(seg.lo);
      part.work += 1;
      for (std::uint64_t k = seg.lo; k <= seg.hi; ++k) {
        const std::uint64_t inv_next = F.inv_pow(k + 1);
        const std::uint64_t upper = std::min(inv_k, n_limit);
        const std::uint64_t lower = std::max(inv_next, N);
        part.work += 2;
        if (upper > lower) part.value += static_cast<u128>(d(k)) * (upper - lower);
        inv_k = inv_next;
      }
      return part;
    });
  }

  SumResult r;
  r.method = SumMethod::kBlocked;
  r.x = x;
  r.c = c;
  r.n_limit = n_limit;
  r.split_N = N;
  r.work_units = 1;
  for (const auto& p : s1) {
    r.value += p.value;
    r.work_units += p.work;
  }
  for (const auto& p : s2) {
    r.value += p.value;
    r.work_units += p.work;
  }
  return r;
}

namespace {

mpz_class mpz_pow(std::uint64_t base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

std::uint64_t floor_real_power(std::uint64_t x, mpfr_srcptr exponent, bool strict) {
  Real base(256), v(256);
  mpfr_set_ui(base.get(), x, MPFR_RNDN);
  mpfr_pow(v.get(), base.get(), exponent, MPFR_RNDN);
  mpz_class f;
  mpfr_get_z(f.get_mpz_t(), v.get(), MPFR_RNDD);
  if (strict && mpfr_integer_p(v.get()) && f > 0) f -= 1;
  return f.get_ui();
}

}  // namespace

std::uint64_t max_split(std::uint64_t x, const Exponent& c) {
  if (x == 0) throw DomainError("max_split: x must be >= 1");
  if (c.is_rational()) {
    // N < x^{q/(p+q)}  <=>  N^{p+q} < x^q.
    const unsigned long e = static_cast<unsigned long>(c.p() + c.q());
    mpz_class xq = mpz_pow(x, static_cast<unsigned long>(c.q()));
    mpz_class m;
    const bool exact = mpz_root(m.get_mpz_t(), xq.get_mpz_t(), e) != 0;
    if (exact) m -= 1;
    return m.get_ui();
  }
  Real cv(256), e(256);
  c.nearest(cv);
  mpfr_add_ui(e.get(), cv.get(), 1, MPFR_RNDN);
  mpfr_ui_div(e.get(), 1, e.get(), MPFR_RNDN);
  return floor_real_power(x, e.get(), true);
}

std::uint64_t optimal_N(std::uint64_t x, const Exponent& c) {
  if (x < 2) throw DomainError("optimal_N: x must be >= 2");
  std::uint64_t N;
  if (c.is_rational()) {
    mpq_class cq = c.as_rational();
    mpq_class theta = cq < mpq_class(2, 3)
                          ? mpq_class(2 * (1 + cq) / (2 * cq * cq + 5 * cq + 2))
                          : mpq_class(5 / (5 * cq + 6));
    theta.canonicalize();
    mpz_class xn = mpz_pow(x, theta.get_num().get_ui());
    mpz_class m;
    mpz_root(m.get_mpz_t(), xn.get_mpz_t(), theta.get_den().get_ui());
    N = m.fits_ulong_p() ? m.get_ui() : UINT64_MAX;
  } else {
    Real cv(256), t(256), tmp(256);
    c.nearest(cv);
    if (mpfr_cmp_d(cv.get(), 2.0 / 3.0) < 0) {
      // (2c+2) / (2c^2+5c+2)
      mpfr_mul(tmp.get(), cv.get(), cv.get(), MPFR_RNDN);
      mpfr_mul_ui(tmp.get(), tmp.get(), 2, MPFR_RNDN);
      mpfr_mul_ui(t.get(), cv.get(), 5, MPFR_RNDN);
      mpfr_add(tmp.get(), tmp.get(), t.get(), MPFR_RNDN);
      mpfr_add_ui(tmp.get(), tmp.get(), 2, MPFR_RNDN);
      mpfr_mul_ui(t.get(), cv.get(), 2, MPFR_RNDN);
      mpfr_add_ui(t.get(), t.get(), 2, MPFR_RNDN);
      mpfr_div(t.get(), t.get(), tmp.get(), MPFR_RNDN);
    } else {
      mpfr_mul_ui(tmp.get(), cv.get(), 5, MPFR_RNDN);
      mpfr_add_ui(tmp.get(), tmp.get(), 6, MPFR_RNDN);
      mpfr_ui_div(t.get(), 5, tmp.get(), MPFR_RNDN);
    }
    N = floor_real_power(x, t.get(), false);
  }
  return std::clamp<std::uint64_t>(N, 1, std::max<std::uint64_t>(max_split(x, c), 1));
}

}  // namespace divsum
