#pragma once

// Structured outcome of a verification, scan, or search run.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ffekr {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr std::uint64_t kDefaultSeed = 20240917;

// An enumeration that would exceed its configured budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { pass, fail, inapplicable, budget_exceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
    case Verdict::budget_exceeded: return "budget-exceeded";
  }
  return "fail";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inapplicable") return Verdict::inapplicable;
  if (s == "budget-exceeded") return Verdict::budget_exceeded;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

struct Report {
  std::string claim_id;
  std::string field_spec;
  json parameters = json::object();
  Verdict verdict{Verdict::pass};
  std::vector<json> witnesses;
  std::map<std::string, std::int64_t> counters;
  std::int64_t wall_time_ms{0};
  std::optional<std::uint64_t> seed;
  std::string tool_version{kToolVersion};
  std::vector<std::string> notes;

  bool ok() const { return verdict == Verdict::pass || verdict == Verdict::inapplicable; }

  // Marks the report failed; every failure carries a witness.
  void fail(json witness) {
    verdict = Verdict::fail;
    witnesses.push_back(std::move(witness));
  }

  bool operator==(const Report&) const = default;
};

inline void to_json(json& j, const Report& r) {
  j = json::object();
  j["claimId"] = r.claim_id;
  j["fieldSpec"] = r.field_spec;
  j["parameters"] = r.parameters;
  j["verdict"] = to_string(r.verdict);
  j["witnesses"] = r.witnesses;
  j["counters"] = json::object();
  for (const auto& [k, v] : r.counters) j["counters"][k] = v;
  j["wallTimeMs"] = r.wall_time_ms;
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  j["toolVersion"] = r.tool_version;
  j["notes"] = r.notes;
}

inline void from_json(const json& j, Report& r) {
  r.claim_id = j.at("claimId").get<std::string>();
  r.field_spec = j.at("fieldSpec").get<std::string>();
  r.parameters = j.at("parameters");
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.witnesses = j.at("witnesses").get<std::vector<json>>();
  r.counters.clear();
  for (const auto& [k, v] : j.at("counters").items()) r.counters[k] = v.get<std::int64_t>();
  r.wall_time_ms = j.at("wallTimeMs").get<std::int64_t>();
  if (j.at("seed").is_null())
    r.seed.reset();
  else
    r.seed = j.at("seed").get<std::uint64_t>();
  r.tool_version = j.at("toolVersion").get<std::string>();
  r.notes = j.value("notes", std::vector<std::string>{});
}

inline std::string to_json_line(const Report& r) { return json(r).dump(); }

// Single JSON object as produced by to_json_line.
inline Report parse_report(const std::string& line) { return json::parse(line).get<Report>(); }

inline std::string csv_header() { return "claimId,fieldSpec,verdict,primaryCounter,wallTimeMs"; }

// The primary counter is "scanned" when present, else the first counter.
inline std::string to_csv_row(const Report& r) {
  std::int64_t primary = 0;
  if (auto it = r.counters.find("scanned"); it != r.counters.end())
    primary = it->second;
  else if (!r.counters.empty())
    primary = r.counters.begin()->second;
  std::ostringstream os;
  os << r.claim_id << ',' << r.field_spec << ',' << to_string(r.verdict) << ',' << primary << ',' << r.wall_time_ms;
  return os.str();
}

inline std::string to_human(const Report& r) {
  std::ostringstream os;
  os << '[' << to_string(r.verdict) << "] " << r.claim_id;
  if (!r.field_spec.empty()) os << " (F_" << r.field_spec << ')';
  os << "  " << r.wall_time_ms << " ms\n";
  if (!r.parameters.empty()) os << "  parameters: " << r.parameters.dump() << '\n';
  for (const auto& [k, v] : r.counters) os << "  " << k << " = " << v << '\n';
  for (const auto& w : r.witnesses) os << "  witness: " << w.dump() << '\n';
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  return os.str();
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace ffekr
