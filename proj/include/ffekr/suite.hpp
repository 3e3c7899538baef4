#pragma once

// Claim-level reports for the family constructions, and the tiered matrix of
// every claim the tool can check.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ffekr/charsum.hpp"
#include "ffekr/directions.hpp"
#include "ffekr/families.hpp"
#include "ffekr/report.hpp"
#include "ffekr/search.hpp"

namespace ffekr {

inline json family_json(const Family& U) {
  json out = json::array();
  for (const auto& f : U.members()) out.push_back(format_poly(f));
  return out;
}

// Pencil, Hilton-Milner and (odd q) tangent family sizes and pair structure.
inline Report construction_report(const Field& F) {
  Stopwatch clock;
  Report r;
  r.claim_id = "construction-sizes";
  r.field_spec = F.spec_string();
  const std::uint64_t q = F.q();

  const auto pen = pencil(F, F.zero(), F.zero(), 2);
  r.counters["pencilSize"] = static_cast<std::int64_t>(pen.size());
  if (pen.size() != q * q) r.fail({{"family", "pencil"}, {"size", pen.size()}, {"expected", q * q}});

  const auto hm = hilton_milner(F, {F.zero(), F.one()}, F.zero(), F.zero());
  r.counters["hiltonMilnerSize"] = static_cast<std::int64_t>(hm.size());
  if (hm.size() != (q * q + q) / 2) r.fail({{"family", "hilton-milner"}, {"size", hm.size()}, {"expected", (q * q + q) / 2}});

  if (F.odd()) {
    const auto tf = tangent_family(F, F.one(), F.zero(), F.zero());
    const PolyK f(std::vector<Fe>{F.zero(), F.zero(), F.one()});
    r.counters["tangentSize"] = static_cast<std::int64_t>(tf.size());
    if (tf.size() != q * (q - 1) / 2 + 1) r.fail({{"family", "tangent"}, {"size", tf.size()}, {"expected", q * (q - 1) / 2 + 1}});
    std::int64_t non_tangent = 0;
    for (const auto& g : tf.members())
      if (g != f && intersection_count(F, f, g) != 1) {
        ++non_tangent;
        if (r.witnesses.size() < 8) r.fail({{"family", "tangent"}, {"notTangent", format_poly(g)}});
      }
    r.counters["tangentFailures"] = non_tangent;
    // The closed form (q^2 - q + 1)/2 found in the literature is not an integer for odd q.
    r.notes.push_back("tangent family size " + std::to_string(tf.size()) + " = q(q-1)/2 + 1; (q^2-q+1)/2 = " +
                      std::to_string((q * q - q + 1) / 2) + ".5 is not an integer");
  }
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

inline Report hilton_milner_report(const Field& F) {
  Stopwatch clock;
  Report r;
  r.claim_id = "hilton-milner-properties";
  r.field_spec = F.spec_string();
  const auto hm = hilton_milner(F, {F.zero(), F.one()}, F.zero(), F.zero());
  r.counters["size"] = static_cast<std::int64_t>(hm.size());
  const auto inter = is_t_intersecting(F, hm, 1);
  if (!inter.ok)
    r.fail({{"notIntersecting", json::array({format_poly(hm[inter.witness->first]), format_poly(hm[inter.witness->second])})}});
  if (auto pt = common_point(F, hm)) r.fail({{"commonPoint", point_json(*pt)}});
  if (inter.ok && !top_coeff_injective(F, hm, 1)) r.fail({{"topCoefficients", "not injective"}});
  if (stability_exceeds(F, hm.size(), 2)) r.notes.push_back("size exceeds the stability threshold (q outside its hypothesis range)");
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

// (q^2 + q)/2 never exceeds the k = 2 stability threshold for odd q in range.
inline Report threshold_consistency_report(std::uint64_t q_min, std::uint64_t q_max) {
  Stopwatch clock;
  Report r;
  r.claim_id = "stability-threshold";
  r.parameters["qMin"] = q_min;
  r.parameters["qMax"] = q_max;
  std::int64_t checked = 0;
  for (std::uint64_t q = q_min; q <= q_max; ++q) {
    if (q % 2 == 0) continue;
    // prime powers only
    std::uint64_t p = 2;
    while (q % p) ++p;
    std::uint64_t m = q;
    while (m % p == 0) m /= p;
    if (m != 1) continue;
    ++checked;
    const std::uint64_t hm = (q * q + q) / 2;
    if (stability_exceeds(q, hm, 2)) r.fail({{"q", q}, {"size", hm}});
  }
  r.counters["scanned"] = checked;
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

// Drop one member from random pencils and re-extend.
inline Report extension_report(const Field& F, int pencils, std::uint64_t seed) {
  Stopwatch clock;
  Report r;
  r.claim_id = "pencil-extension";
  r.field_spec = F.spec_string();
  r.seed = seed;
  r.parameters["pencils"] = pencils;
  std::mt19937_64 rng(seed);
  std::int64_t checks = 0;
  for (int i = 0; i < pencils; ++i) {
    const Fe a{static_cast<std::uint32_t>(rng() % F.q())}, b{static_cast<std::uint32_t>(rng() % F.q())};
    const auto full = pencil(F, a, b, 2);
    for (std::size_t drop = 0; drop < full.size(); ++drop) {
      std::vector<PolyK> rest;
      for (std::size_t j = 0; j < full.size(); ++j)
        if (j != drop) rest.push_back(full[j]);
      const auto ext = extend_unique(F, Family(2, std::move(rest)));
      ++checks;
      if (!ext.unique || ext.candidates.size() != 1 || !(ext.candidates[0] == full))
        r.fail({{"point", json::array({a.v, b.v})}, {"dropped", format_poly(full[drop])}});
    }
  }
  r.counters["scanned"] = checks;
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

inline Report rootable_report(const Field& F) { return rootable_scan(F); }

enum class Tier { fast, full, extended };

inline Tier parse_tier(const std::string& s) {
  if (s == "fast") return Tier::fast;
  if (s == "full") return Tier::full;
  if (s == "extended") return Tier::extended;
  throw std::invalid_argument("unknown tier '" + s + "'");
}

struct SuiteEntry {
  std::string claim_id;
  std::string field_spec;
  std::function<Report()> run;
};

// The tier presets. fast: q <= 9 and cheap budgets. full: every acceptance
// scale (q = 8 direction scan, q = 25 shortcut scan, 10^4 probe trials).
// extended: adds sampled q = 9 direction scan and larger oracles.
inline std::vector<SuiteEntry> suite_entries(Tier tier, unsigned threads = 1) {
  std::vector<SuiteEntry> out;
  const bool full = tier != Tier::fast;
  const bool extended = tier == Tier::extended;
  auto add = [&](std::string id, std::string spec, std::function<Report()> fn) {
    out.push_back({std::move(id), std::move(spec), std::move(fn)});
  };
  auto field = [](const std::string& s) { return Field(s); };

  for (std::string s : {"2^1", "3^1", "2^2"}) add("ekr-maximum-family", s, [=] { return ekr_oracle(field(s), 2); });
  if (extended)
    for (std::string s : {"5^1", "7^1"}) add("ekr-maximum-family", s, [=] { return ekr_oracle(field(s), 2); });

  std::vector<std::string> small = {"3^1", "2^2", "5^1", "7^1", "2^3", "3^2"};
  if (full) small.push_back("11^1");
  for (const auto& s : small) add("construction-sizes", s, [=] { return construction_report(field(s)); });
  if (full) add("construction-sizes", "13^1", [=] { return construction_report(field("13^1")); });
  for (const auto& s : small) add("hilton-milner-properties", s, [=] { return hilton_milner_report(field(s)); });
  add("stability-threshold", "", [] { return threshold_consistency_report(11, 169); });
  for (std::string s : {"5^1", "7^1"}) add("pencil-extension", s, [=] { return extension_report(field(s), 20, kDefaultSeed); });

  std::vector<std::string> odd = {"3^1", "5^1", "7^1", "3^2"};
  if (full) {
    odd.push_back("11^1");
    odd.push_back("13^1");
  }
  for (const auto& s : odd) add("quadratic-character-sum-identity", s, [=] { return quad_sum_scan(field(s)); });
  std::vector<std::string> weil = {"3^2"};
  if (full) weil.insert(weil.end(), {"5^2", "7^2", "11^2"});
  for (const auto& s : weil) add("weil-bound-quadratic-character", s, [=] { return weil_sample_scan(field(s), 1000, 5, kDefaultSeed); });

  for (std::string s : {"2^1", "2^2", "3^1"}) add("carlitz-additive-directions", s, [=] {
      CarlitzOptions o;
      o.threads = threads;
      return carlitz_scan(field(s), o);
    });
  if (full) add("carlitz-additive-directions", "2^3", [=] {
      CarlitzOptions o;
      o.threads = threads;
      return carlitz_scan(field("2^3"), o);
    });
  if (extended) add("carlitz-additive-directions", "3^2", [=] {
      CarlitzOptions o;
      o.mode = CarlitzOptions::Mode::sample;
      o.threads = threads;
      return carlitz_scan(field("3^2"), o);
    });
  if (full) add("norm-shape-square-values", "5^2", [] { return shortcut_scan(Field("5^2")); });
  add("frobenius-shape-squares", "3^2", [] { return frobenius_square_scan(Field("3^2"), 1); });
  add("power-difference-functional-equation", "5^1", [] { return mcconnel_report(Field("5^1"), 2); });
  add("power-difference-functional-equation", "3^2", [] { return mcconnel_report(Field("3^2"), 2); });
  add("power-difference-functional-equation", "2^2", [] { return mcconnel_report(Field("2^2"), 3); });

  for (std::string s : {"2^1", "3^1", "2^2", "5^1"})
    for (int k = 1; k <= 2; ++k)
      for (int t = 1; t <= k; ++t) add("agreement-count-bounds", s, [=] { return sam0_check(field(s), k, t); });
  std::vector<std::string> rootable = {"3^1", "2^2", "5^1", "7^1", "2^3", "3^2"};
  if (full) rootable.insert(rootable.end(), {"11^1", "13^1"});
  for (const auto& s : rootable) add("rootable-quadratic-count", s, [=] { return rootable_report(field(s)); });

  const std::uint64_t trials = full ? 10'000 : 1'000;
  std::vector<std::string> probe = {"2^2", "5^1", "7^1", "2^3", "3^2"};
  if (extended) probe.push_back("11^1");
  for (const auto& s : probe) add("stability-probe", s, [=] {
      ProbeOptions o;
      o.trials = trials;
      return stability_probe(field(s), o);
    });
  return out;
}

}  // namespace ffekr
