#pragma once

// Polynomials of degree at most k over F_q and their graphs in AG(2, q).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ffekr/gf.hpp"

namespace ffekr {

// coeffs[i] multiplies x^i. The length fixes the degree bound k = size - 1;
// leading zeros are kept.
struct PolyK {
  std::vector<Fe> coeffs;

  PolyK() = default;
  explicit PolyK(std::vector<Fe> c) : coeffs(std::move(c)) {}

  int k() const { return static_cast<int>(coeffs.size()) - 1; }
  Fe operator[](std::size_t i) const { return coeffs[i]; }
  auto operator<=>(const PolyK&) const = default;
};

struct PointAG {
  Fe x;
  Fe y;
  auto operator<=>(const PointAG&) const = default;
};

inline PolyK zero_poly(int k) { return PolyK(std::vector<Fe>(static_cast<std::size_t>(k + 1))); }

inline Fe eval(const Field& F, const PolyK& f, Fe x) {
  Fe acc{0};
  for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.coeffs[i]);
  return acc;
}

inline void require_same_bound(const PolyK& f, const PolyK& g) {
  if (f.coeffs.size() != g.coeffs.size())
    throw std::invalid_argument("degree bounds differ (" + std::to_string(f.k()) + " vs " + std::to_string(g.k()) + ")");
}

inline PolyK poly_sub(const Field& F, const PolyK& f, const PolyK& g) {
  require_same_bound(f, g);
  PolyK d = f;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) d.coeffs[i] = F.sub(f.coeffs[i], g.coeffs[i]);
  return d;
}

inline PolyK poly_add(const Field& F, const PolyK& f, const PolyK& g) {
  require_same_bound(f, g);
  PolyK s = f;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) s.coeffs[i] = F.add(f.coeffs[i], g.coeffs[i]);
  return s;
}

// f(x + alpha), same degree bound.
inline PolyK shift(const Field& F, const PolyK& f, Fe alpha) {
  std::vector<Fe> acc(f.coeffs.size());
  for (std::size_t i = f.coeffs.size(); i-- > 0;) {
    // acc <- acc * (x + alpha) + c_i
    std::vector<Fe> next(acc.size());
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j] = F.add(next[j], F.mul(acc[j], alpha));
      if (j + 1 < acc.size()) next[j + 1] = F.add(next[j + 1], acc[j]);
    }
    next[0] = F.add(next[0], f.coeffs[i]);
    acc = std::move(next);
  }
  return PolyK(std::move(acc));
}

// Number of x with f(x) = g(x). Closed-form root counting for k <= 2,
// exhaustive evaluation above that.
inline std::uint32_t intersection_count(const Field& F, const PolyK& f, const PolyK& g) {
  require_same_bound(f, g);
  if (f == g) return F.q();
  const PolyK d = poly_sub(F, f, g);
  if (d.k() <= 2) {
    const Fe zero{0};
    const Fe a = d.coeffs[0];
    const Fe b = d.k() >= 1 ? d.coeffs[1] : zero;
    const Fe c = d.k() >= 2 ? d.coeffs[2] : zero;
    return static_cast<std::uint32_t>(quadratic_roots(F, a, b, c).roots.size());
  }
  std::uint32_t count = 0;
  for (std::uint32_t x = 0; x < F.q(); ++x) count += eval(F, d, Fe{x}).is_zero();
  return count;
}

// Whether two distinct degree-<=2 graphs meet, decided from the coefficients
// of f - g = a + b x + c x^2 without locating the common point.
inline bool pair_intersects_fast(const Field& F, const PolyK& f, const PolyK& g) {
  if (f.k() != 2 || g.k() != 2) throw std::invalid_argument("pair_intersects_fast needs degree bound 2");
  if (f == g) throw std::invalid_argument("pair_intersects_fast needs distinct polynomials");
  const Fe a = F.sub(f[0], g[0]);
  const Fe b = F.sub(f[1], g[1]);
  const Fe c = F.sub(f[2], g[2]);
  if (c.is_zero()) return !b.is_zero();  // linear, or a nonzero constant
  if (F.odd()) {
    const Fe disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)));
    return F.quadratic_character(disc) >= 0;
  }
  if (b.is_zero()) return true;  // x^2 = a/c has the unique square root
  return F.trace(F.div(F.mul(a, c), F.mul(b, b))).is_zero();
}

// Vertex packing: index = sum_i coeffs[i] * q^i.
inline std::uint64_t pack(const Field& F, const PolyK& f) {
  std::uint64_t idx = 0;
  for (std::size_t i = f.coeffs.size(); i-- > 0;) idx = idx * F.q() + f.coeffs[i].v;
  return idx;
}

inline PolyK unpack(const Field& F, int k, std::uint64_t idx) {
  PolyK f = zero_poly(k);
  for (auto& c : f.coeffs) {
    c = Fe{static_cast<std::uint32_t>(idx % F.q())};
    idx /= F.q();
  }
  return f;
}

inline std::uint64_t poly_space_size(const Field& F, int k) {
  std::uint64_t n = 1;
  for (int i = 0; i <= k; ++i) n *= F.q();
  return n;
}

// "1,3,2" is 1 + 3x + 2x^2 (element indices, low degree first).
inline PolyK parse_poly(const Field& F, std::string_view text) {
  std::vector<Fe> coeffs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && (token.back() == ' ' || token.back() == '\r')) token.remove_suffix(1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw std::invalid_argument("malformed coefficient '" + std::string(token) + "'");
    coeffs.push_back(F.element(value));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return PolyK(std::move(coeffs));
}

inline std::string format_poly(const PolyK& f) {
  std::string s;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.coeffs[i].v);
  }
  return s;
}

}  // namespace ffekr
