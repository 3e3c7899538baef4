#pragma once

// Finite fields F_{p^n} backed by exp/log/Zech tables.
//
// Element encoding: an element is the residue class of a polynomial
// c_0 + c_1 x + ... + c_{n-1} x^{n-1} modulo the defining polynomial, and its
// index is the base-p packing sum_i c_i p^i. Index 0 is zero, index 1 is one,
// and for n = 1 the index is the ordinary residue mod p.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ffekr {

class field_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Fe {
  std::uint32_t v{0};

  constexpr Fe() = default;
  constexpr explicit Fe(std::uint32_t index) : v(index) {}
  constexpr bool is_zero() const { return v == 0; }
  constexpr auto operator<=>(const Fe&) const = default;
};

// Largest field for which full tables are built.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 16;

struct FieldSpec {
  std::uint32_t p{0};
  std::uint32_t n{0};
  // Monic, low-degree-first, length n + 1. Empty selects the default modulus.
  std::vector<std::uint32_t> modulus;

  bool operator==(const FieldSpec&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense polynomials over the prime field F_p, low-degree-first, trimmed.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and small, Fermat is fine.
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b over F_p; b must be nonzero.
inline PrimePoly prime_poly_mod(PrimePoly a, PrimePoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Trial division against every monic polynomial of degree 1..n/2.
inline bool is_irreducible(const PrimePoly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  for (std::size_t deg = 1; deg <= n / 2; ++deg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      PrimePoly divisor(deg + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < deg; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      divisor[deg] = 1;
      if (prime_poly_mod(f, divisor, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

// Lexicographically smallest monic irreducible of degree n over F_p, comparing
// coefficients c_0, c_1, ... in that order.
inline std::vector<std::uint32_t> default_modulus(std::uint32_t p, std::uint32_t n) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint32_t> f(n + 1, 0);
    std::uint64_t c = code;
    // c_0 is the most significant digit of the enumeration.
    for (std::uint32_t i = n; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    f[n] = 1;
    if (detail::is_irreducible(f, p)) return f;
  }
  throw field_error("no irreducible polynomial found");  // unreachable
}

// Parses "p^n", "p" or "p^n/c0,c1,...,cn".
inline FieldSpec parse_field_spec(std::string_view text) {
  auto parse_u32 = [&](std::string_view s) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || value > UINT32_MAX)
      throw field_error("malformed field spec '" + std::string(text) + "'");
    return static_cast<std::uint32_t>(value);
  };
  FieldSpec spec;
  std::string_view head = text;
  std::string_view tail;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    head = text.substr(0, slash);
    tail = text.substr(slash + 1);
    if (tail.empty()) throw field_error("malformed field spec '" + std::string(text) + "'");
  }
  if (auto caret = head.find('^'); caret != std::string_view::npos) {
    spec.p = parse_u32(head.substr(0, caret));
    spec.n = parse_u32(head.substr(caret + 1));
  } else {
    spec.p = parse_u32(head);
    spec.n = 1;
  }
  if (!tail.empty() || text.find('/') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      auto comma = tail.find(',', start);
      spec.modulus.push_back(parse_u32(tail.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return spec;
}

// Immutable field context. Copies share the same tables.
class Field {
 public:
  explicit Field(FieldSpec spec) : t_(build(std::move(spec))) {}
  explicit Field(std::string_view spec_text) : Field(parse_field_spec(spec_text)) {}
  Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus = {})
      : Field(FieldSpec{p, n, std::move(modulus)}) {}

  std::uint32_t p() const { return t_->p; }
  std::uint32_t n() const { return t_->n; }
  std::uint32_t q() const { return t_->q; }
  bool odd() const { return t_->p != 2; }
  bool is_square_order() const { return t_->n % 2 == 0; }
  // sqrt(q) when n is even.
  std::uint32_t sqrt_q() const { return t_->sqrt_q; }
  const std::vector<std::uint32_t>& modulus() const { return t_->modulus; }
  Fe generator() const { return Fe{t_->exp[1]}; }

  // "p^n", with "/c0,...,cn" appended when the modulus is not the default one.
  std::string spec_string() const {
    std::string s = std::to_string(p()) + "^" + std::to_string(n());
    if (!t_->default_modulus) {
      s += '/';
      for (std::size_t i = 0; i < t_->modulus.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(t_->modulus[i]);
      }
    }
    return s;
  }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }
  Fe element(std::uint64_t index) const {
    if (index >= q()) throw field_error("element index " + std::to_string(index) + " out of range for q = " + std::to_string(q()));
    return Fe{static_cast<std::uint32_t>(index)};
  }
  // Embedding of the integer m through the prime field.
  Fe from_int(std::int64_t m) const {
    const std::int64_t r = ((m % static_cast<std::int64_t>(p())) + p()) % p();
    return Fe{static_cast<std::uint32_t>(r)};
  }

  std::vector<std::uint32_t> digits(Fe x) const {
    std::vector<std::uint32_t> d(n());
    std::uint32_t v = x.v;
    for (auto& c : d) {
      c = v % p();
      v /= p();
    }
    return d;
  }
  Fe from_digits(const std::vector<std::uint32_t>& d) const {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p() + d[i] % p();
    return Fe{v};
  }

  Fe add(Fe x, Fe y) const {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const std::uint32_t lx = t_->log[x.v];
    const std::uint32_t diff = t_->log[y.v] + (t_->order - lx);
    const std::uint32_t z = t_->zech[diff >= t_->order ? diff - t_->order : diff];
    if (z == 0) return Fe{0};
    return Fe{t_->exp[lx + t_->log[z]]};
  }
  Fe neg(Fe x) const { return Fe{t_->neg[x.v]}; }
  Fe sub(Fe x, Fe y) const { return add(x, neg(y)); }
  Fe mul(Fe x, Fe y) const {
    if (x.is_zero() || y.is_zero()) return Fe{0};
    return Fe{t_->exp[t_->log[x.v] + t_->log[y.v]]};
  }
  Fe inv(Fe x) const {
    if (x.is_zero()) throw std::domain_error("division by zero in F_" + std::to_string(q()));
    const std::uint32_t l = t_->log[x.v];
    return Fe{t_->exp[l == 0 ? 0 : t_->order - l]};
  }
  Fe div(Fe x, Fe y) const { return mul(x, inv(y)); }
  Fe pow(Fe x, std::uint64_t e) const {
    if (e == 0) return Fe{1};
    if (x.is_zero()) return Fe{0};
    const std::uint64_t l = (std::uint64_t{t_->log[x.v]} * (e % t_->order)) % t_->order;
    return Fe{t_->exp[l]};
  }
  // x -> x^{p^j}
  Fe frobenius(Fe x, std::uint32_t j) const {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < j % n(); ++i) e *= p();
    return pow(x, e);
  }

  // Discrete log base generator(); x must be nonzero.
  std::uint32_t log(Fe x) const {
    if (x.is_zero()) throw std::domain_error("log of zero");
    return t_->log[x.v];
  }
  Fe exp(std::uint64_t k) const { return Fe{t_->exp[k % t_->order]}; }

  // Absolute trace, as an element of the prime subfield (index < p).
  Fe trace(Fe x) const { return Fe{t_->trace[x.v]}; }

  Fe norm(Fe x) const {
    if (!is_square_order()) throw field_error("norm to the index-2 subfield needs even n (q = " + std::to_string(q()) + ")");
    return Fe{t_->norm[x.v]};
  }

  // 1 on nonzero squares, -1 on nonsquares, 0 at zero.
  int quadratic_character(Fe x) const {
    if (!odd()) throw field_error("quadratic character needs odd q (q = " + std::to_string(q()) + ")");
    if (x.is_zero()) return 0;
    return (t_->log[x.v] % 2 == 0) ? 1 : -1;
  }
  // Zero counts as a square.
  bool is_square(Fe x) const { return x.is_zero() || !odd() || t_->log[x.v] % 2 == 0; }

  std::optional<Fe> sqrt(Fe x) const {
    if (x.is_zero()) return Fe{0};
    const std::uint32_t l = t_->log[x.v];
    if (!odd()) return Fe{t_->exp[(l % 2 == 0 ? l : l + t_->order) / 2]};
    if (l % 2 != 0) return std::nullopt;
    return Fe{t_->exp[l / 2]};
  }

  // Characteristic 2 only: some z with z^2 + z = u, if one exists.
  std::optional<Fe> solve_artin_schreier(Fe u) const {
    if (odd()) throw field_error("Artin-Schreier solve needs q even");
    const std::uint32_t z = t_->artin[u.v];
    if (z == kNoRoot) return std::nullopt;
    return Fe{z};
  }

 private:
  static constexpr std::uint32_t kNoRoot = UINT32_MAX;

  struct Tables {
    std::uint32_t p{}, n{}, q{}, order{}, sqrt_q{};
    std::vector<std::uint32_t> modulus;
    bool default_modulus{true};
    std::vector<std::uint32_t> exp;   // length 2 * order
    std::vector<std::uint32_t> log;   // log[0] unused
    std::vector<std::uint32_t> zech;  // index of 1 + g^k
    std::vector<std::uint32_t> neg;
    std::vector<std::uint32_t> trace;
    std::vector<std::uint32_t> norm;
    std::vector<std::uint32_t> artin;
  };

  std::shared_ptr<const Tables> t_;

  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  static std::shared_ptr<const Tables> build(FieldSpec spec);
};

inline std::shared_ptr<const Field::Tables> Field::build(FieldSpec spec) {
  if (spec.n == 0) throw field_error("field exponent must be >= 1");
  if (!detail::is_prime(spec.p)) throw field_error("characteristic " + std::to_string(spec.p) + " is not prime");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.n; ++i) {
    q *= spec.p;
    if (q > kMaxFieldOrder)
      throw field_error("field order " + std::to_string(spec.p) + "^" + std::to_string(spec.n) +
                        " exceeds the table limit 2^16");
  }

  auto t = std::make_shared<Tables>();
  t->p = spec.p;
  t->n = spec.n;
  t->q = static_cast<std::uint32_t>(q);
  t->order = t->q - 1;

  const auto def = default_modulus(spec.p, spec.n);
  if (spec.modulus.empty()) {
    t->modulus = def;
  } else {
    if (spec.modulus.size() != spec.n + 1) throw field_error("modulus must have degree exactly " + std::to_string(spec.n));
    for (auto c : spec.modulus)
      if (c >= spec.p) throw field_error("modulus coefficient " + std::to_string(c) + " not reduced mod p");
    if (spec.modulus.back() != 1) throw field_error("modulus must be monic");
    if (!detail::is_irreducible(spec.modulus, spec.p)) throw field_error("modulus is reducible over F_" + std::to_string(spec.p));
    t->modulus = spec.modulus;
    t->default_modulus = (spec.modulus == def);
  }

  const std::uint32_t p = t->p, n = t->n;
  // Schoolbook product of two digit vectors, reduced mod the modulus.
  auto slow_mul = [&](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> prod(2 * n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    for (std::uint32_t k = 2 * n - 1; k >= n; --k) {
      const std::uint32_t c = prod[k];
      if (c == 0) continue;
      prod[k] = 0;
      for (std::uint32_t i = 0; i < n; ++i)
        prod[k - n + i] = static_cast<std::uint32_t>((prod[k - n + i] + std::uint64_t{p - c} * t->modulus[i]) % p);
    }
    prod.resize(n);
    return prod;
  };
  auto to_digits = [&](std::uint32_t v) {
    std::vector<std::uint32_t> d(n);
    for (auto& c : d) {
      c = v % p;
      v /= p;
    }
    return d;
  };
  auto to_index = [&](const std::vector<std::uint32_t>& d) {
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
  };

  // Smallest index of multiplicative order q - 1.
  t->exp.assign(2 * static_cast<std::size_t>(t->order), 0);
  bool found = false;
  for (std::uint32_t g = (t->q == 2 ? 1 : 2); g < t->q && !found; ++g) {
    const auto gd = to_digits(g);
    auto cur = to_digits(1);
    std::uint32_t k = 0;
    bool ok = true;
    do {
      t->exp[k] = to_index(cur);
      cur = slow_mul(cur, gd);
      ++k;
      if (to_index(cur) == 1 && k < t->order) {
        ok = false;
        break;
      }
    } while (k < t->order);
    found = ok && to_index(cur) == 1;
  }
  if (!found) throw std::logic_error("no multiplicative generator found");
  for (std::uint32_t k = 0; k < t->order; ++k) t->exp[k + t->order] = t->exp[k];

  t->log.assign(t->q, 0);
  for (std::uint32_t k = 0; k < t->order; ++k) t->log[t->exp[k]] = k;

  t->neg.resize(t->q);
  for (std::uint32_t v = 0; v < t->q; ++v) {
    auto d = to_digits(v);
    for (auto& c : d) c = (p - c) % p;
    t->neg[v] = to_index(d);
  }

  t->zech.resize(t->order);
  for (std::uint32_t k = 0; k < t->order; ++k) {
    auto d = to_digits(t->exp[k]);
    d[0] = (d[0] + 1) % p;
    t->zech[k] = to_index(d);
  }

  Field view(t);
  t->trace.resize(t->q);
  for (std::uint32_t v = 0; v < t->q; ++v) {
    Fe acc{0}, term{v};
    for (std::uint32_t i = 0; i < n; ++i) {
      acc = view.add(acc, term);
      term = view.pow(term, p);
    }
    if (acc.v >= p) throw std::logic_error("trace left the prime field");
    t->trace[v] = acc.v;
  }

  if (n % 2 == 0) {
    std::uint32_t s = 1;
    for (std::uint32_t i = 0; i < n / 2; ++i) s *= p;
    t->sqrt_q = s;
    t->norm.resize(t->q);
    for (std::uint32_t v = 0; v < t->q; ++v) t->norm[v] = view.pow(Fe{v}, s + 1).v;
  }

  if (p == 2) {
    t->artin.assign(t->q, kNoRoot);
    for (std::uint32_t z = 0; z < t->q; ++z) {
      const Fe u = view.add(view.mul(Fe{z}, Fe{z}), Fe{z});
      if (t->artin[u.v] == kNoRoot) t->artin[u.v] = z;
    }
  } else {
    std::uint32_t squares = 0;
    for (std::uint32_t v = 1; v < t->q; ++v) squares += (t->log[v] % 2 == 0);
    if (squares != t->order / 2) throw std::logic_error("square table inconsistent");
  }
  return t;
}

// Roots in F_q of a + b x + c x^2.
struct QuadRoots {
  bool identically_zero{false};
  std::vector<Fe> roots;  // ascending index
};

inline QuadRoots quadratic_roots(const Field& F, Fe a, Fe b, Fe c) {
  QuadRoots out;
  if (c.is_zero()) {
    if (b.is_zero()) {
      out.identically_zero = a.is_zero();
      return out;
    }
    out.roots.push_back(F.neg(F.div(a, b)));
    return out;
  }
  if (F.odd()) {
    const Fe four_ac = F.mul(F.from_int(4), F.mul(a, c));
    const Fe disc = F.sub(F.mul(b, b), four_ac);
    const auto s = F.sqrt(disc);
    if (!s) return out;
    const Fe two_c_inv = F.inv(F.mul(F.from_int(2), c));
    const Fe r1 = F.mul(F.sub(*s, b), two_c_inv);
    const Fe r2 = F.mul(F.sub(F.neg(*s), b), two_c_inv);
    out.roots.push_back(r1);
    if (r2 != r1) out.roots.push_back(r2);
  } else {
    if (b.is_zero()) {
      out.roots.push_back(*F.sqrt(F.div(a, c)));
      return out;
    }
    // x = (b/c) z turns the equation into z^2 + z = ac/b^2.
    const Fe u = F.div(F.mul(a, c), F.mul(b, b));
    if (!F.trace(u).is_zero()) return out;
    const Fe z = *F.solve_artin_schreier(u);
    const Fe scale = F.div(b, c);
    out.roots.push_back(F.mul(scale, z));
    out.roots.push_back(F.mul(scale, F.add(z, F.one())));
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace ffekr
