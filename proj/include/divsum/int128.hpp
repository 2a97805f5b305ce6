#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace divsum {

using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~static_cast<u128>(0);

/// a*b, or nullopt on overflow.
inline std::optional<u128> checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

/// base^e, or nullopt on overflow.
std::optional<u128> checked_pow(u128 base, std::uint64_t e);

/// Largest r with r^e <= m (e >= 1).
u128 iroot(u128 m, std::uint64_t e);

std::string to_string(u128 v);

/// Parses a nonnegative decimal integer; throws DomainError on junk or overflow.
u128 parse_u128(const std::string& text);

}  // namespace divsum
