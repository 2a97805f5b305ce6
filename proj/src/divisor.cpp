#include "divsum/divisor.hpp"

#include <cmath>
#include <string>

#include "divsum/errors.hpp"
#include "divsum/int128.hpp"
#include "divsum/parallel.hpp"

namespace divsum {

namespace {

constexpr std::uint32_t kSmallPrimeLimit = 1u << 20;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = primes_up_to(kSmallPrimeLimit);
  return primes;
}

}  // namespace

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (static_cast<u128>(r) * r > n)) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::uint32_t divisor_count(std::uint64_t n) {
  if (n == 0) throw DomainError("divisor_count: n must be >= 1");
  std::uint32_t d = 1;
  auto take = [&](std::uint64_t p) {
    std::uint32_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    d *= e + 1;
  };
  for (std::uint32_t p : small_primes()) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    take(p);
  }
  // Past the table: odd candidates.
  for (std::uint64_t p = kSmallPrimeLimit + 1; static_cast<u128>(p) * p <= n; p += 2) take(p);
  if (n > 1) d *= 2;
  return d;
}

namespace detail {

void sieve_segment(std::uint64_t lo, std::span<std::uint32_t> out,
                   std::span<const std::uint32_t> primes) {
  const std::uint64_t len = out.size();
  if (len == 0) return;
  if (lo == 1) {
    std::fill(out.begin(), out.end(), 0u);
    for (std::uint64_t q = 1; q <= len; ++q)
      for (std::uint64_t m = q; m <= len; m += q) ++out[m - 1];
    return;
  }
  const std::uint64_t hi = lo + len - 1;
  std::vector<std::uint64_t> rest(len);
  for (std::uint64_t i = 0; i < len; ++i) rest[i] = lo + i;
  std::fill(out.begin(), out.end(), 1u);
  for (std::uint32_t p : primes) {
    if (static_cast<std::uint64_t>(p) * p > hi) break;
    std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t m = first; m <= hi; m += p) {
      std::uint64_t i = m - lo;
      std::uint32_t e = 0;
      do {
        rest[i] /= p;
        ++e;
      } while (rest[i] % p == 0);
      out[i] *= e + 1;
    }
  }
  // At most one prime factor above sqrt(hi) remains.
  for (std::uint64_t i = 0; i < len; ++i)
    if (rest[i] > 1) out[i] *= 2;
}

}  // namespace detail

DivisorTable divisor_sieve(std::uint64_t lo, std::uint64_t hi, const SieveOptions& opt) {
  if (lo == 0) throw DomainError("divisor_sieve: lo must be >= 1");
  if (lo > hi) throw DomainError("divisor_sieve: lo > hi");
  if (hi - lo >= opt.max_entries)
    throw ResourceError("divisor_sieve: segment of " + std::to_string(hi - lo + 1) +
                        " entries exceeds the limit of " + std::to_string(opt.max_entries));
  const std::uint64_t root = isqrt(hi);
  if (root >= (std::uint64_t{1} << 31)) throw ResourceError("divisor_sieve: hi too large");

  std::vector<std::uint32_t> local;
  const std::vector<std::uint32_t>* primes = &small_primes();
  if (root > kSmallPrimeLimit) {
    local = primes_up_to(static_cast<std::uint32_t>(root));
    primes = &local;
  }

  DivisorTable table;
  table.lo = lo;
  table.hi = hi;
  table.values.resize(hi - lo + 1);
  auto segments = parallel::split(lo, hi, opt.segment_size);
  parallel::for_each_index(segments.size(), [&](std::size_t s) {
    const auto& seg = segments[s];
    std::span<std::uint32_t> out(table.values.data() + (seg.lo - lo), seg.hi - seg.lo + 1);
    detail::sieve_segment(seg.lo, out, *primes);
  });
  return table;
}

std::uint64_t divisor_summatory(std::uint64_t t) {
  if (t == 0) throw DomainError("divisor_summatory: t must be >= 1");
  const std::uint64_t s = isqrt(t);
  u128 acc = 0;
  for (std::uint64_t n = 1; n <= s; ++n) acc += t / n;
  u128 D = 2 * acc - static_cast<u128>(s) * s;
  if (D > UINT64_MAX) throw ResourceError("divisor_summatory: D(t) exceeds 64 bits");
  return static_cast<std::uint64_t>(D);
}

}  // namespace divsum
