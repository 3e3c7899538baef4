#include <gtest/gtest.h>

#include "ffekr/report.hpp"
#include "ffekr/suite.hpp"

using namespace ffekr;

namespace {

Report sample() {
  Report r;
  r.claim_id = "rootable-quadratic-count";
  r.field_spec = "5^1";
  r.parameters["k"] = 2;
  r.parameters["mode"] = "exhaustive";
  r.counters["scanned"] = 16;
  r.counters["violations"] = 0;
  r.wall_time_ms = 12;
  r.seed = 42;
  r.notes.push_back("a note");
  return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  Report r = sample();
  EXPECT_EQ(parse_report(to_json_line(r)), r);
  r.fail({{"poly", "1,2,3"}});
  r.seed.reset();
  const auto line = to_json_line(r);
  EXPECT_EQ(parse_report(line), r);
  EXPECT_NE(line.find("\"seed\":null"), std::string::npos);
  EXPECT_NE(line.find("\"verdict\":\"fail\""), std::string::npos);
}

TEST(Report, KeyOrderIsStable) {
  const auto line = to_json_line(sample());
  const char* keys[] = {"claimId", "fieldSpec", "parameters", "verdict", "witnesses", "counters", "wallTimeMs", "seed", "toolVersion", "notes"};
  std::size_t pos = 0;
  for (const char* k : keys) {
    const auto at = line.find(std::string("\"") + k + "\"", pos);
    ASSERT_NE(at, std::string::npos) << k;
    pos = at;
  }
  EXPECT_EQ(to_json_line(sample()), line);
}

TEST(Report, FailCarriesWitness) {
  Report r;
  EXPECT_TRUE(r.ok());
  r.fail({{"x", 1}});
  EXPECT_EQ(r.verdict, Verdict::fail);
  EXPECT_EQ(r.witnesses.size(), 1u);
  EXPECT_FALSE(r.ok());
}

TEST(Report, VerdictStrings) {
  for (auto v : {Verdict::pass, Verdict::fail, Verdict::inapplicable, Verdict::budget_exceeded})
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
  EXPECT_STREQ(to_string(Verdict::budget_exceeded), "budget-exceeded");
  EXPECT_THROW(verdict_from_string("maybe"), std::invalid_argument);
}

TEST(Report, CsvRow) {
  EXPECT_EQ(csv_header(), "claimId,fieldSpec,verdict,primaryCounter,wallTimeMs");
  EXPECT_EQ(to_csv_row(sample()), "rootable-quadratic-count,5^1,pass,16,12");
  Report r;
  r.claim_id = "x";
  r.counters["maxClique"] = 9;
  EXPECT_EQ(to_csv_row(r), "x,,pass,9,0");
}

TEST(Report, HumanFormatMentionsVerdictAndCounters) {
  const auto text = to_human(sample());
  EXPECT_NE(text.find("[pass]"), std::string::npos);
  EXPECT_NE(text.find("scanned = 16"), std::string::npos);
}

TEST(Report, ClaimReportsAreByteStableModuloTiming) {
  for (int i = 0; i < 2; ++i) {
    auto a = construction_report(Field("7")), b = construction_report(Field("7"));
    a.wall_time_ms = b.wall_time_ms = 0;
    EXPECT_EQ(to_json_line(a), to_json_line(b));
  }
}

TEST(Suite, TiersAreNested) {
  const auto fast = suite_entries(Tier::fast), full = suite_entries(Tier::full), ext = suite_entries(Tier::extended);
  EXPECT_LT(fast.size(), full.size());
  EXPECT_LT(full.size(), ext.size());
  EXPECT_EQ(parse_tier("full"), Tier::full);
  EXPECT_THROW(parse_tier("huge"), std::invalid_argument);
  for (const auto& e : fast) {
    if (e.field_spec.empty()) continue;
    EXPECT_LE(Field(e.field_spec).q(), 9u) << e.claim_id;
  }
}

TEST(Suite, ConstructionReportNotesTangentDiscrepancy) {
  const auto r = construction_report(Field("5"));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.counters.at("tangentSize"), 11);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes[0].find("not an integer"), std::string::npos);
}
