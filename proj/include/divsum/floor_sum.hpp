#pragma once

#include <cstdint>
#include <optional>

#include "divsum/exact_floor.hpp"
#include "divsum/exponent.hpp"
#include "divsum/int128.hpp"

namespace divsum {

enum class SumMethod { kDirect, kBlocked };

const char* to_string(SumMethod m);

/// Exact S_{d,c}(x) = sum_{n <= x^{1/c}} d([x / n^c]).
struct SumResult {
  u128 value = 0;
  SumMethod method = SumMethod::kDirect;
  std::uint64_t x = 0;
  Exponent c = Exponent::rational(1, 1);
  std::uint64_t n_limit = 0;  ///< [x^{1/c}]
  std::optional<std::uint64_t> split_N;
  /// Exact floor evaluations plus divisor evaluations/lookups.
  std::uint64_t work_units = 0;
};

struct SumOptions {
  FloorOptions floor;
  /// n-range handed to one worker by sum_direct.
  std::uint64_t direct_chunk = std::uint64_t{1} << 16;
  /// k-segment handed to one worker by sum_blocked.
  std::uint64_t k_segment = std::uint64_t{1} << 18;
};

/// Walks n = 1 .. [x^{1/c}] in order. Each maximal run of n sharing the same
/// k = [x/n^c] is located with floor_x_over_pow alone (a floating estimate of
/// the run end, corrected by exact probes) and contributes d(k) * length.
SumResult sum_direct(std::uint64_t x, const Exponent& c, const SumOptions& opt = {});

/// S_1 + S_2 split at N: S_1 = sum_{n <= N} d([x/n^c]) directly; S_2 reindexed
/// by k = [x/n^c] with the n-count for each k taken from floor_inv_pow and
/// clamped to (N, [x^{1/c}]]. Requires 1 <= N < x^{1/(c+1)}.
SumResult sum_blocked(std::uint64_t x, const Exponent& c, std::uint64_t N,
                      const SumOptions& opt = {});

/// Largest N with N < x^{1/(c+1)}; 0 when no admissible N exists.
std::uint64_t max_split(std::uint64_t x, const Exponent& c);

/// [x^{2(1+c)/(2c^2+5c+2)}] for c < 2/3, else [x^{5/(5c+6)}], clamped into
/// [1, x^{1/(c+1)}). Requires x >= 2.
std::uint64_t optimal_N(std::uint64_t x, const Exponent& c);

}  // namespace divsum
