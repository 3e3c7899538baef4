#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ffekr/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FFEKR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ffekr_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("field info --field 4^1").status, 2);
  EXPECT_EQ(run("field info --field 3^2/2,0,1").status, 2);
  EXPECT_EQ(run("nonsense").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("field info").status, 2);
  EXPECT_EQ(run("poly eval --field 5 --poly 1,9").status, 2);
  EXPECT_EQ(run("families verify --file " + path("missing.txt")).status, 2);
}

TEST_F(CliTest, FieldInfo) {
  const auto r = run("field info --field 3^2");
  EXPECT_EQ(r.status, 0);
  const auto j = ffekr::json::parse(r.out);
  EXPECT_EQ(j["q"], 9);
  EXPECT_EQ(j["modulus"], ffekr::json::array({1, 0, 1}));
  const auto d = run("field arith --field 5 --op div --a 3 --b 2");
  EXPECT_EQ(ffekr::json::parse(d.out)["result"], 4);
}

TEST_F(CliTest, HiltonMilnerFileAndVerify) {
  const auto file = path("hm.txt");
  EXPECT_EQ(run("families construct hm --field 5^1 --point 0,1 --line 0,0 --out " + file).status, 0);
  std::ifstream is(file);
  std::stringstream ss;
  ss << is.rdbuf();
  const auto ls = lines(ss.str());
  ASSERT_EQ(ls.size(), 16u);
  EXPECT_EQ(ls[0], "5^1");

  const auto v = run("families verify --t 1 --file " + file);
  EXPECT_EQ(v.status, 0);
  const auto rep = ffekr::parse_report(lines(v.out).at(0));
  EXPECT_EQ(rep.verdict, ffekr::Verdict::pass);
  EXPECT_TRUE(rep.parameters["commonPoint"].is_null());
  ASSERT_FALSE(rep.notes.empty());
  EXPECT_NE(rep.notes.back().find("HM-type"), std::string::npos);

  // Same family on stdout.
  EXPECT_EQ(lines(run("families construct hm --field 5^1 --point 0,1 --line 0,0").out).size(), 16u);
}

TEST_F(CliTest, PencilVerifyDuplicatesAndExtend) {
  const auto file = path("pencil.txt");
  ASSERT_EQ(run("families construct pencil --field 5^1 --point 1,2 --out " + file).status, 0);
  {
    std::ifstream is(file);
    std::string header, first;
    std::getline(is, header);
    std::getline(is, first);
    is.close();
    std::ofstream os(file, std::ios::app);
    os << first << '\n';
  }
  const auto v = run("families verify --file " + file);
  EXPECT_EQ(v.status, 0);
  const auto rep = ffekr::parse_report(lines(v.out).at(0));
  EXPECT_EQ(rep.counters.at("size"), 25);
  EXPECT_EQ(rep.counters.at("duplicatesRemoved"), 1);
  EXPECT_EQ(rep.parameters["commonPoint"], ffekr::json::array({1, 2}));
  EXPECT_FALSE(rep.notes.empty());

  const auto e = run("families extend --file " + file);
  EXPECT_EQ(e.status, 0);
  EXPECT_EQ(ffekr::parse_report(lines(e.out).at(0)).parameters["unique"], true);
}

TEST_F(CliTest, NonIntersectingFileFails) {
  const auto file = path("bad.txt");
  std::ofstream(file) << "5^1\n0,0,1\n1,0,1\n";
  const auto v = run("families verify --file " + file);
  EXPECT_EQ(v.status, 1);
  const auto rep = ffekr::parse_report(lines(v.out).at(0));
  EXPECT_EQ(rep.verdict, ffekr::Verdict::fail);
  EXPECT_FALSE(rep.witnesses.empty());
}

TEST_F(CliTest, ParseErrorNamesLine) {
  const auto file = path("broken.txt");
  std::ofstream(file) << "5^1\n0,0,1\n0,x,1\n";
  const std::string cmd = std::string(FFEKR_CLI_PATH) + " families verify --file " + file + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[512] = {0};
  std::string out;
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  const int st = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(st), 2);
  EXPECT_NE(out.find("line 3"), std::string::npos);
}

TEST_F(CliTest, ThresholdAndCharsum) {
  const auto t = ffekr::json::parse(run("families threshold --field 5^2 --size 604").out);
  EXPECT_EQ(t["exceeds"], true);
  EXPECT_EQ(t["minExceedingSize"], 604);
  EXPECT_EQ(run("charsum mcconnel --field 3^2 --delta 2").status, 0);
  EXPECT_EQ(run("charsum shortcut --field 3^2").status, 2);
  EXPECT_EQ(run("charsum quad --field 7 --poly 1,2,3").status, 0);
  const auto sq = ffekr::json::parse(run("charsum square-test --field 5 --poly 1,2,1").out);
  EXPECT_EQ(sq["perfectSquare"], true);
  EXPECT_EQ(sq["root"], ffekr::json::array({1, 1}));
}

TEST_F(CliTest, SearchAndDirections) {
  const auto e = run("search ekr --field 3 --k 2");
  EXPECT_EQ(e.status, 0);
  EXPECT_EQ(ffekr::parse_report(lines(e.out).at(0)).counters.at("maxClique"), 9);
  const auto c = run("directions carlitz --field 2^2");
  EXPECT_EQ(ffekr::parse_report(lines(c.out).at(0)).counters.at("affine"), 16);
  const auto b = run("directions carlitz --field 3^2");
  EXPECT_EQ(b.status, 1);
  EXPECT_EQ(ffekr::parse_report(lines(b.out).at(0)).verdict, ffekr::Verdict::budget_exceeded);
  const auto g = lines(run("search graph --field 2 --k 1 --t 1").out);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g[0].rfind("# ffekr-graph v1", 0), 0u);
}

TEST_F(CliTest, FormatsAndDeterminism) {
  const auto a = run("--deterministic search probe --field 5 --trials 200");
  const auto b = run("search probe --field 5 --trials 200 --deterministic");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const auto csv = lines(run("--format csv search rootable --field 7").out);
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0], "claimId,fieldSpec,verdict,primaryCounter,wallTimeMs");
  EXPECT_EQ(csv[1].rfind("rootable-quadratic-count,7^1,pass,36,", 0), 0u);
  EXPECT_NE(run("--format human search rootable --field 7").out.find("[pass]"), std::string::npos);
}

TEST_F(CliTest, FastSuitePasses) {
  const auto r = run("suite --tier fast --deterministic");
  EXPECT_EQ(r.status, 0);
  const auto ls = lines(r.out);
  EXPECT_GT(ls.size(), 30u);
  for (const auto& l : ls) {
    const auto rep = ffekr::parse_report(l);
    EXPECT_TRUE(rep.verdict == ffekr::Verdict::pass || rep.verdict == ffekr::Verdict::inapplicable) << l;
    EXPECT_EQ(rep.wall_time_ms, 0);
  }
  EXPECT_EQ(run("suite --tier fast --deterministic").out, r.out);
}

TEST_F(CliTest, TierFromEnvironment) {
  const std::string cmd = "FFEKR_TIER=bogus " + std::string(FFEKR_CLI_PATH) + " suite >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(st), 2);
}
