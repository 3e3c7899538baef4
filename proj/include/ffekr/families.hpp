#pragma once

// Intersecting families of polynomials: constructions, verification, and the
// exact stability threshold.

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ffekr/exact.hpp"
#include "ffekr/gf.hpp"
#include "ffekr/polyfun.hpp"

namespace ffekr {

// Deduplicated set of polynomials with a common degree bound, kept in
// lexicographic order of coefficient index vectors (constant term first).
class Family {
 public:
  Family() = default;
  Family(int k, std::vector<PolyK> members) : k_(k), members_(std::move(members)) {
    for (const auto& f : members_)
      if (f.k() != k_) throw std::invalid_argument("family member with degree bound " + std::to_string(f.k()) + ", expected " + std::to_string(k_));
    std::sort(members_.begin(), members_.end());
    const auto before = members_.size();
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    duplicates_removed_ = before - members_.size();
  }

  int k() const { return k_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<PolyK>& members() const { return members_; }
  const PolyK& operator[](std::size_t i) const { return members_[i]; }
  std::size_t duplicates_removed() const { return duplicates_removed_; }
  bool contains(const PolyK& f) const { return std::binary_search(members_.begin(), members_.end(), f); }
  bool operator==(const Family& o) const { return k_ == o.k_ && members_ == o.members_; }

 private:
  int k_{0};
  std::vector<PolyK> members_;
  std::size_t duplicates_removed_{0};
};

// All q^k polynomials of degree <= k through (alpha, beta).
inline Family pencil(const Field& F, Fe alpha, Fe beta, int k) {
  if (k < 1) throw std::invalid_argument("pencil needs k >= 1");
  std::uint64_t count = 1;
  for (int i = 0; i < k; ++i) count *= F.q();
  std::vector<PolyK> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) {
    PolyK g = zero_poly(k);
    std::uint64_t c = code;
    Fe rest{0};
    Fe power = F.one();
    for (int i = 1; i <= k; ++i) {
      g.coeffs[static_cast<std::size_t>(i)] = Fe{static_cast<std::uint32_t>(c % F.q())};
      c /= F.q();
      power = F.mul(power, alpha);
      rest = F.add(rest, F.mul(g.coeffs[static_cast<std::size_t>(i)], power));
    }
    g.coeffs[0] = F.sub(beta, rest);
    out.push_back(std::move(g));
  }
  return Family(k, std::move(out));
}

// Degree-<=2 polynomials through P whose graph meets the line y = v x + w,
// together with that line. P must lie off the line.
inline Family hilton_milner(const Field& F, PointAG P, Fe v, Fe w) {
  if (F.add(F.mul(v, P.x), w) == P.y) throw std::invalid_argument("point lies on the line");
  const PolyK line(std::vector<Fe>{w, v, Fe{0}});
  std::vector<PolyK> out{line};
  const std::uint32_t q = F.q();
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c) {
        const PolyK h(std::vector<Fe>{Fe{a}, Fe{b}, Fe{c}});
        if (eval(F, h, P.x) != P.y) continue;
        if (intersection_count(F, h, line) >= 1) out.push_back(h);
      }
  return Family(2, std::move(out));
}

// q odd. f = A x^2 + B x + C together with every a x^2 + b x + C - (B-b)^2 / (4(A-a))
// for which A - a is a nonzero square; each of the latter meets f exactly once.
inline Family tangent_family(const Field& F, Fe A, Fe B, Fe C) {
  if (!F.odd()) throw field_error("tangent family needs odd q");
  std::vector<PolyK> out{PolyK(std::vector<Fe>{C, B, A})};
  const Fe four = F.from_int(4);
  for (std::uint32_t a = 0; a < F.q(); ++a) {
    const Fe gap = F.sub(A, Fe{a});
    if (gap.is_zero() || F.quadratic_character(gap) != 1) continue;
    for (std::uint32_t b = 0; b < F.q(); ++b) {
      const Fe diff = F.sub(B, Fe{b});
      const Fe constant = F.sub(C, F.div(F.mul(diff, diff), F.mul(four, gap)));
      out.push_back(PolyK(std::vector<Fe>{constant, Fe{b}, Fe{a}}));
    }
  }
  return Family(2, std::move(out));
}

// For two non-f members (a_i, b_i), (a_j, b_j) of the tangent family: the
// discriminant of their difference, computed directly and through the
// factored form (a_i B - a_j B - A b_i + a_j b_i + A b_j - a_i b_j)^2 / ((A-a_i)(A-a_j)).
inline std::pair<Fe, Fe> tangent_pair_discriminants(const Field& F, Fe A, Fe B, Fe ai, Fe bi, Fe aj, Fe bj) {
  const Fe four = F.from_int(4);
  auto shift = [&](Fe a, Fe b) {
    const Fe d = F.sub(B, b);
    return F.div(F.mul(d, d), F.mul(four, F.sub(A, a)));
  };
  const Fe db = F.sub(bi, bj);
  const Fe direct = F.sub(F.mul(db, db), F.mul(F.mul(four, F.sub(ai, aj)), F.sub(shift(aj, bj), shift(ai, bi))));
  Fe num = F.sub(F.mul(ai, B), F.mul(aj, B));
  num = F.sub(num, F.mul(A, bi));
  num = F.add(num, F.mul(aj, bi));
  num = F.add(num, F.mul(A, bj));
  num = F.sub(num, F.mul(ai, bj));
  const Fe factored = F.div(F.mul(num, num), F.mul(F.sub(A, ai), F.sub(A, aj)));
  return {direct, factored};
}

struct IntersectingVerdict {
  bool ok{true};
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // member indices
};

// Every unordered pair shares at least t points; the lex-least failing pair
// is reported otherwise.
inline IntersectingVerdict is_t_intersecting(const Field& F, const Family& U, int t) {
  if (t < 1 || t > U.k()) throw std::invalid_argument("t must satisfy 1 <= t <= k");
  const auto& m = U.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (intersection_count(F, m[i], m[j]) < static_cast<std::uint32_t>(t)) return {false, std::make_pair(i, j)};
  return {};
}

// Every point lying on all graphs, ascending.
inline std::vector<PointAG> common_points(const Field& F, const Family& U) {
  if (U.empty()) throw std::invalid_argument("common point of an empty family");
  std::vector<PointAG> out;
  for (std::uint32_t x = 0; x < F.q(); ++x) {
    const Fe y = eval(F, U[0], Fe{x});
    bool all = true;
    for (std::size_t i = 1; i < U.size() && all; ++i) all = eval(F, U[i], Fe{x}) == y;
    if (all) out.push_back({Fe{x}, y});
  }
  return out;
}

inline std::optional<PointAG> common_point(const Field& F, const Family& U) {
  auto pts = common_points(F, U);
  if (pts.empty()) return std::nullopt;
  return pts.front();
}

class no_common_point : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Extension {
  // |U| > q^{k-1}: at most q^{k-1} polynomials pass through two fixed points,
  // so the common point and hence the pencil are forced.
  bool unique{false};
  std::vector<PointAG> points;
  std::vector<Family> candidates;  // one pencil per common point
};

inline Extension extend_unique(const Field& F, const Family& U) {
  if (U.empty()) throw std::invalid_argument("cannot extend an empty family");
  if (U.k() >= 1 && !is_t_intersecting(F, U, 1).ok) throw std::invalid_argument("family is not intersecting");
  Extension ext;
  ext.points = common_points(F, U);
  if (ext.points.empty()) throw no_common_point("family has no common point");
  std::uint64_t bound = 1;
  for (int i = 0; i < U.k() - 1; ++i) bound *= F.q();
  ext.unique = U.size() > bound;
  if (ext.unique && ext.points.size() != 1)
    throw std::logic_error("more than q^{k-1} members share two points");
  for (const auto& pt : ext.points) {
    Family p = pencil(F, pt.x, pt.y, U.k());
    for (const auto& g : U.members())
      if (!p.contains(g)) throw std::logic_error("member missing from its pencil");
    ext.candidates.push_back(std::move(p));
  }
  return ext;
}

// The coefficients of x^t..x^k separate the members of a t-intersecting family.
inline bool top_coeff_injective(const Field& F, const Family& U, int t) {
  if (!is_t_intersecting(F, U, t).ok) throw std::invalid_argument("family is not " + std::to_string(t) + "-intersecting");
  std::vector<std::vector<Fe>> tops;
  tops.reserve(U.size());
  for (const auto& f : U.members()) tops.emplace_back(f.coeffs.begin() + t, f.coeffs.end());
  std::sort(tops.begin(), tops.end());
  return std::adjacent_find(tops.begin(), tops.end()) == tops.end();
}

// k = 2: size > q^2 - q sqrt(q)/4 + c q/8 + sqrt(q)/8 with c = 1 (q even) or 3
// (q odd), decided as 8 size > 8 q^2 + c q + (1 - 2q) sqrt(q).
// k > 2: size > q^k - q^{k-1}.
inline bool stability_exceeds(std::uint64_t q, std::uint64_t size, int k) {
  if (k < 2) throw std::invalid_argument("stability threshold needs k >= 2");
  if (k == 2) {
    const std::int64_t c = (q % 2 == 0) ? 1 : 3;
    const std::int64_t qq = static_cast<std::int64_t>(q);
    return exceeds_m_plus_k_sqrt(8 * static_cast<std::int64_t>(size), 8 * qq * qq + c * qq, 1 - 2 * qq, q);
  }
  std::uint64_t qk1 = 1;
  for (int i = 0; i < k - 1; ++i) qk1 *= q;
  return size > qk1 * q - qk1;
}

inline bool stability_exceeds(const Field& F, std::uint64_t size, int k) { return stability_exceeds(F.q(), size, k); }

// Smallest size that exceeds the threshold.
inline std::uint64_t stability_min_size(std::uint64_t q, int k) {
  std::uint64_t lo = 0, hi = 1;
  for (int i = 0; i < k; ++i) hi *= q;
  hi += 1;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (stability_exceeds(q, mid, k))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Family files: a field-spec header line, then one polynomial per line as
// comma-separated coefficient indices (constant term first). Blank lines and
// lines starting with '#' are ignored.

class family_parse_error : public std::runtime_error {
 public:
  family_parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct FamilyFile {
  Field field;
  Family family;
  std::vector<std::string> warnings;
};

inline void write_family(std::ostream& os, const Field& F, const Family& U) {
  os << F.spec_string() << '\n';
  for (const auto& f : U.members()) os << format_poly(f) << '\n';
}

inline FamilyFile read_family(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<Field> field;
  std::vector<PolyK> polys;
  std::vector<std::size_t> origin;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    try {
      if (!field) {
        field.emplace(line);
        continue;
      }
      PolyK f = parse_poly(*field, line);
      if (!polys.empty() && f.k() != polys.front().k())
        throw std::invalid_argument("degree bound " + std::to_string(f.k()) + " differs from " + std::to_string(polys.front().k()));
      polys.push_back(std::move(f));
      origin.push_back(lineno);
    } catch (const std::invalid_argument& e) {
      throw family_parse_error(lineno, e.what());
    }
  }
  if (!field) throw family_parse_error(lineno, "missing field-spec header");
  if (polys.empty()) throw family_parse_error(lineno, "family has no members");
  std::vector<std::string> warnings;
  {
    std::vector<std::pair<PolyK, std::size_t>> seen;
    for (std::size_t i = 0; i < polys.size(); ++i) seen.emplace_back(polys[i], origin[i]);
    std::stable_sort(seen.begin(), seen.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < seen.size(); ++i)
      if (seen[i].first == seen[i - 1].first)
        warnings.push_back("line " + std::to_string(seen[i].second) + ": duplicate of line " + std::to_string(seen[i - 1].second) + ", dropped");
  }
  const int k = polys.front().k();
  return FamilyFile{*field, Family(k, std::move(polys)), std::move(warnings)};
}

}  // namespace ffekr
