#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace divsum {

/// d(n) for every n in [lo, hi].
struct DivisorTable {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
  std::vector<std::uint32_t> values;

  std::uint32_t operator()(std::uint64_t n) const { return values[n - lo]; }
  std::size_t size() const { return values.size(); }
};

struct SieveOptions {
  /// Entries handled by one worker at a time.
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  /// Largest table a single call may allocate.
  std::uint64_t max_entries = std::uint64_t{1} << 28;
};

/// Number of positive divisors of n, by trial division over a cached prime table.
std::uint32_t divisor_count(std::uint64_t n);

/// Primes up to `limit`, simple Eratosthenes.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// d(n) on [lo, hi]. Segments starting at 1 use the multiple-counting sieve;
/// other segments divide out each prime p <= sqrt(hi) and multiply in the
/// exponent, then account for a single large cofactor.
DivisorTable divisor_sieve(std::uint64_t lo, std::uint64_t hi, const SieveOptions& opt = {});

/// D(t) = sum_{n <= t} d(n), via 2 * sum_{n <= sqrt t} [t/n] - [sqrt t]^2.
std::uint64_t divisor_summatory(std::uint64_t t);

/// Integer square root.
std::uint64_t isqrt(std::uint64_t n);

namespace detail {
/// Fills out[i] = d(lo + i) for one segment; `primes` must cover sqrt(lo + out.size() - 1).
void sieve_segment(std::uint64_t lo, std::span<std::uint32_t> out,
                   std::span<const std::uint32_t> primes);
}  // namespace detail

}  // namespace divsum
