#pragma once

// Exact decisions for inequalities involving sqrt(q), without floating point.

#include <cstdint>

namespace ffekr {

using i128 = __int128;

// Decides lhs > m + k * sqrt(q) for integers lhs, m, k and q >= 0.
inline bool exceeds_m_plus_k_sqrt(std::int64_t lhs, std::int64_t m, std::int64_t k, std::uint64_t q) {
  const i128 d = i128{lhs} - m;  // decide d > k * sqrt(q)
  const i128 rhs_sq = i128{k} * k * static_cast<i128>(q);
  if (k >= 0) {
    if (d <= 0) return false;
    return d * d > rhs_sq;
  }
  if (d >= 0) return true;
  return d * d < rhs_sq;
}

// Decides |value| <= k * sqrt(q) for k >= 0.
inline bool abs_at_most_k_sqrt(std::int64_t value, std::int64_t k, std::uint64_t q) {
  if (k < 0) return false;
  const i128 v = value;
  return v * v <= i128{k} * k * static_cast<i128>(q);
}

// floor(sqrt(x))
inline std::uint64_t isqrt(std::uint64_t x) {
  std::uint64_t r = 0;
  for (std::uint64_t bit = std::uint64_t{1} << 31; bit; bit >>= 1) {
    const std::uint64_t c = r | bit;
    if (c * c <= x) r = c;
  }
  return r;
}

}  // namespace ffekr
