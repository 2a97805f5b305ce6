#include "divsum/int128.hpp"

#include <algorithm>
#include <cmath>

#include "divsum/errors.hpp"

namespace divsum {

std::optional<u128> checked_pow(u128 base, std::uint64_t e) {
  u128 result = 1;
  while (e > 0) {
    if (e & 1) {
      auto r = checked_mul(result, base);
      if (!r) return std::nullopt;
      result = *r;
    }
    e >>= 1;
    if (e > 0) {
      auto b = checked_mul(base, base);
      if (!b) return std::nullopt;
      base = *b;
    }
  }
  return result;
}

namespace {

// r^e <= m, without overflow.
bool pow_le(u128 r, std::uint64_t e, u128 m) {
  auto v = checked_pow(r, e);
  return v && *v <= m;
}

}  // namespace

u128 iroot(u128 m, std::uint64_t e) {
  if (e == 1 || m < 2) return m;
  // Floating guess, then exact correction.
  long double guess = std::pow(static_cast<long double>(m), 1.0L / static_cast<long double>(e));
  u128 r = guess < 1.0L ? 0 : static_cast<u128>(guess);
  // The guess is accurate to a few ulps; gallop in case it is not.
  if (pow_le(r, e, m)) {
    u128 step = 1;
    while (pow_le(r + step, e, m)) {
      r += step;
      step *= 2;
    }
    while (step > 1) {
      step /= 2;
      if (pow_le(r + step, e, m)) r += step;
    }
  } else {
    u128 step = 1;
    while (r >= step && !pow_le(r - step, e, m)) {
      r -= step;
      step *= 2;
    }
    r = r >= step ? r - step : 0;
    // Now r^e <= m < (r + step)^e.
    while (step > 1) {
      step /= 2;
      if (pow_le(r + step, e, m)) r += step;
    }
  }
  return r;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_u128(const std::string& text) {
  if (text.empty()) throw DomainError("empty integer");
  u128 v = 0;
  for (char ch : text) {
    if (ch < '0' || ch > '9') throw DomainError("not a nonnegative integer: '" + text + "'");
    auto m = checked_mul(v, 10);
    if (!m || *m > kU128Max - static_cast<u128>(ch - '0'))
      throw DomainError("integer out of range: '" + text + "'");
    v = *m + static_cast<u128>(ch - '0');
  }
  return v;
}

}  // namespace divsum
