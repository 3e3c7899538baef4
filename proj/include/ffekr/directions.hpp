#pragma once

// Direction sets of function graphs and their additive (F_p-linear) span.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ffekr/gf.hpp"
#include "ffekr/report.hpp"

namespace ffekr {

// sigma as a value table: values[x] = sigma(x).
struct FuncTable {
  std::vector<Fe> values;
  bool operator==(const FuncTable&) const = default;
  auto operator<=>(const FuncTable&) const = default;
};

struct DirectionSet {
  std::vector<Fe> members;  // ascending index
  std::uint32_t span_dim{0};
};

struct SpanResult {
  std::uint32_t dim{0};
  std::vector<Fe> basis;  // subset of the input, in insertion order
};

// Incremental Gaussian elimination over F_p on coordinate vectors.
class SpanBuilder {
 public:
  explicit SpanBuilder(const Field& F) : p_(F.p()), n_(F.n()), field_(&F) {}

  std::uint32_t dim() const { return static_cast<std::uint32_t>(rows_.size()); }
  bool full() const { return dim() == n_; }
  const std::vector<Fe>& basis() const { return basis_; }

  // Returns true when x enlarges the span.
  bool insert(Fe x) {
    if (full() || x.is_zero()) return false;
    if (p_ == 2) {
      std::uint32_t v = x.v;
      for (std::size_t i = 0; i < bits_.size(); ++i) v = std::min(v, v ^ bits_[i]);
      if (v == 0) return false;
      bits_.push_back(v);
      std::sort(bits_.begin(), bits_.end(), std::greater<>());
      rows_.emplace_back();
      basis_.push_back(x);
      return true;
    }
    auto v = field_->digits(x);
    for (const auto& row : rows_) {
      const std::uint32_t c = v[row.pivot];
      if (c == 0) continue;
      for (std::uint32_t i = 0; i < n_; ++i)
        v[i] = static_cast<std::uint32_t>((v[i] + std::uint64_t{p_ - c} * row.coords[i]) % p_);
    }
    std::uint32_t pivot = 0;
    while (pivot < n_ && v[pivot] == 0) ++pivot;
    if (pivot == n_) return false;
    const std::uint32_t scale = detail::inv_mod(v[pivot], p_);
    for (auto& c : v) c = static_cast<std::uint32_t>(std::uint64_t{c} * scale % p_);
    rows_.push_back({pivot, std::move(v)});
    basis_.push_back(x);
    return true;
  }

 private:
  struct Row {
    std::uint32_t pivot;
    std::vector<std::uint32_t> coords;
  };
  std::uint32_t p_, n_;
  const Field* field_;
  std::vector<Row> rows_;
  std::vector<std::uint32_t> bits_;  // p = 2: XOR basis with distinct leading bits
  std::vector<Fe> basis_;
};

inline SpanResult additive_span(const Field& F, const std::vector<Fe>& elements) {
  if (elements.empty()) throw std::invalid_argument("additive_span of an empty set");
  SpanBuilder sb(F);
  for (Fe x : elements) sb.insert(x);
  return {sb.dim(), sb.basis()};
}

inline DirectionSet direction_set(const Field& F, const FuncTable& sigma) {
  if (sigma.values.size() != F.q()) throw std::invalid_argument("function table must have q entries");
  std::vector<bool> seen(F.q(), false);
  for (std::uint32_t x = 0; x < F.q(); ++x)
    for (std::uint32_t y = x + 1; y < F.q(); ++y) {
      const Fe d = F.div(F.sub(sigma.values[x], sigma.values[y]), F.sub(Fe{x}, Fe{y}));
      seen[d.v] = true;
    }
  DirectionSet out;
  for (std::uint32_t v = 0; v < F.q(); ++v)
    if (seen[v]) out.members.push_back(Fe{v});
  if (!out.members.empty()) out.span_dim = additive_span(F, out.members).dim;
  return out;
}

inline bool is_affine(const Field& F, const std::vector<Fe>& values) {
  const Fe b = values[0];
  const Fe a = F.sub(values[1], b);
  for (std::uint32_t x = 2; x < F.q(); ++x)
    if (values[x] != F.add(F.mul(a, Fe{x}), b)) return false;
  return true;
}

inline bool is_affine(const Field& F, const FuncTable& sigma) { return is_affine(F, sigma.values); }

struct CarlitzOptions {
  enum class Mode { exhaustive, sample };
  Mode mode{Mode::exhaustive};
  std::uint64_t samples{1'000'000};
  std::uint64_t seed{kDefaultSeed};
  // Largest q^q enumerated in exhaustive mode; the default admits q = 8.
  std::uint64_t budget{16'777'216};
  unsigned threads{1};
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct CarlitzTally {
  std::uint64_t scanned{0};
  std::uint64_t affine{0};
  std::uint64_t proper{0};
  std::uint64_t violations{0};
  std::optional<std::uint64_t> first_violation;
};

// Per-field lookup tables for the inner loop of the scan.
class CarlitzKernel {
 public:
  explicit CarlitzKernel(const Field& F) : F_(F), q_(F.q()) {
    if (q_ > 64) throw std::invalid_argument("carlitz scan supports q <= 64");
    slope_.resize(std::size_t{q_} * q_ * q_);
    // slope_[(dv * q + x) * q + y] = dv / (x - y)
    for (std::uint32_t dv = 0; dv < q_; ++dv)
      for (std::uint32_t x = 0; x < q_; ++x)
        for (std::uint32_t y = 0; y < q_; ++y)
          slope_[(std::size_t{dv} * q_ + x) * q_ + y] = x == y ? 0 : F.div(Fe{dv}, F.sub(Fe{x}, Fe{y})).v;
  }

  // Classifies sigma: returns {affine, proper span}.
  std::pair<bool, bool> classify(const std::vector<Fe>& sigma) const {
    SpanBuilder sb(F_);
    bool proper = true;
    for (std::uint32_t x = 0; x < q_ && proper; ++x)
      for (std::uint32_t y = x + 1; y < q_; ++y) {
        const Fe dv = F_.sub(sigma[x], sigma[y]);
        sb.insert(Fe{slope_[(std::size_t{dv.v} * q_ + x) * q_ + y]});
        if (sb.full()) {
          proper = false;
          break;
        }
      }
    return {is_affine(F_, sigma), proper};
  }

 private:
  const Field& F_;
  std::uint32_t q_;
  std::vector<std::uint32_t> slope_;
};

inline void decode_function(std::uint64_t index, std::uint32_t q, std::vector<Fe>& out) {
  for (auto& v : out) {
    v = Fe{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
}

}  // namespace detail

// Scans functions F_q -> F_q for ones whose direction set lies in a proper
// F_p-subspace yet are not affine. Exhaustive mode enumerates value vectors
// in odometer order (position 0 fastest); sample mode draws sample i from a
// stream keyed by (seed, i), so results do not depend on the thread count.
inline Report carlitz_scan(const Field& F, const CarlitzOptions& opt = {}) {
  Stopwatch clock;
  Report r;
  r.claim_id = "carlitz-additive-directions";
  r.field_spec = F.spec_string();
  const std::uint32_t q = F.q();
  const bool exhaustive = opt.mode == CarlitzOptions::Mode::exhaustive;
  r.parameters["mode"] = exhaustive ? "exhaustive" : "sample";

  std::uint64_t total = 1;
  if (exhaustive) {
    for (std::uint32_t i = 0; i < q; ++i) {
      if (total > opt.budget / q + 1) throw budget_error("q^q exceeds the exhaustive budget for q = " + std::to_string(q));
      total *= q;
    }
    if (total > opt.budget) throw budget_error("q^q = " + std::to_string(total) + " exceeds the exhaustive budget " + std::to_string(opt.budget));
  } else {
    total = opt.samples;
    r.seed = opt.seed;
    r.parameters["samples"] = opt.samples;
  }

  const detail::CarlitzKernel kernel(F);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    detail::CarlitzTally t;
    std::vector<Fe> sigma(q);
    if (exhaustive) detail::decode_function(begin, q, sigma);
    for (std::uint64_t i = begin; i < end; ++i) {
      if (!exhaustive) {
        std::uint64_t state = opt.seed ^ (i * 0xd1b54a32d192ed03ULL);
        for (auto& v : sigma) v = Fe{static_cast<std::uint32_t>(detail::splitmix64(state) % q)};
      }
      const auto [affine, proper] = kernel.classify(sigma);
      ++t.scanned;
      t.affine += affine;
      t.proper += proper;
      if (proper && !affine) {
        ++t.violations;
        if (!t.first_violation) t.first_violation = i;
      }
      if (exhaustive) {
        for (auto& v : sigma) {
          if (++v.v < q) break;
          v.v = 0;
        }
      }
    }
    return t;
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(std::min<std::uint64_t>(total, 64))));
  std::vector<detail::CarlitzTally> tallies(workers);
  if (workers == 1) {
    tallies[0] = work(0, total);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t b = total * w / workers, e = total * (w + 1) / workers;
      pool.emplace_back([&, w, b, e] { tallies[w] = work(b, e); });
    }
    for (auto& th : pool) th.join();
  }

  detail::CarlitzTally sum;
  for (const auto& t : tallies) {
    sum.scanned += t.scanned;
    sum.affine += t.affine;
    sum.proper += t.proper;
    sum.violations += t.violations;
    if (t.first_violation && (!sum.first_violation || *t.first_violation < *sum.first_violation))
      sum.first_violation = t.first_violation;
  }
  r.counters["scanned"] = static_cast<std::int64_t>(sum.scanned);
  r.counters["affine"] = static_cast<std::int64_t>(sum.affine);
  r.counters["properSpan"] = static_cast<std::int64_t>(sum.proper);
  r.counters["violations"] = static_cast<std::int64_t>(sum.violations);

  if (sum.first_violation) {
    std::vector<Fe> sigma(q);
    if (exhaustive) {
      detail::decode_function(*sum.first_violation, q, sigma);
    } else {
      std::uint64_t state = opt.seed ^ (*sum.first_violation * 0xd1b54a32d192ed03ULL);
      for (auto& v : sigma) v = Fe{static_cast<std::uint32_t>(detail::splitmix64(state) % q)};
    }
    json values = json::array();
    for (Fe v : sigma) values.push_back(v.v);
    r.fail({{"index", *sum.first_violation}, {"values", values}});
  }
  if (exhaustive && sum.affine != std::uint64_t{q} * q)
    r.fail({{"affineCount", sum.affine}, {"expected", std::uint64_t{q} * q}});
  if (q <= 2) {
    r.notes.push_back("vacuous: the statement needs q > 2");
    if (r.verdict == Verdict::pass) r.verdict = Verdict::inapplicable;
  }
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

}  // namespace ffekr
