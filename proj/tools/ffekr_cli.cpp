// ffekr: command-line front end. Reports stream to stdout one per line.
//
// Exit status: 0 when every executed claim passes or is inapplicable, 1 when
// any claim fails or runs out of budget, 2 on usage errors (bad arguments,
// malformed field specs or family files).

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffekr/charsum.hpp"
#include "ffekr/directions.hpp"
#include "ffekr/families.hpp"
#include "ffekr/report.hpp"
#include "ffekr/search.hpp"
#include "ffekr/suite.hpp"

using namespace ffekr;

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Emitter {
 public:
  std::string format = "json";
  bool deterministic = false;

  void report(Report r) {
    std::lock_guard lock(mu_);
    if (deterministic) r.wall_time_ms = 0;
    if (r.verdict == Verdict::fail || r.verdict == Verdict::budget_exceeded) failed_ = true;
    if (format == "csv") {
      if (!header_) std::cout << csv_header() << '\n';
      header_ = true;
      std::cout << to_csv_row(r) << '\n';
    } else if (format == "human") {
      std::cout << to_human(r);
    } else {
      std::cout << to_json_line(r) << '\n';
    }
    std::cout.flush();
  }

  // Non-claim output (field info, evaluations): JSON line or key: value text.
  void object(const json& j) {
    std::lock_guard lock(mu_);
    if (format == "human") {
      for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    } else {
      std::cout << j.dump() << '\n';
    }
    std::cout.flush();
  }

  bool failed() const { return failed_; }

 private:
  std::mutex mu_;
  bool header_ = false;
  bool failed_ = false;
};

Field load_field(const std::string& spec) {
  try {
    return Field(spec);
  } catch (const std::invalid_argument& e) {
    throw usage_error(std::string("bad field spec: ") + e.what());
  }
}

std::pair<Fe, Fe> parse_pair(const Field& F, const std::string& s, const char* what) {
  const auto f = parse_poly(F, s);
  if (f.coeffs.size() != 2) throw usage_error(std::string(what) + " needs two comma-separated elements");
  return {f.coeffs[0], f.coeffs[1]};
}

json elements_json(const std::vector<Fe>& xs) {
  json out = json::array();
  for (Fe x : xs) out.push_back(x.v);
  return out;
}

DensePoly dense(const PolyK& f) { return DensePoly(f.coeffs); }

std::string tier_default() {
  if (const char* env = std::getenv("FFEKR_TIER")) return env;
  return "fast";
}

void emit_family(Emitter& out, const Field& F, const Family& U, const std::string& path, const std::string& kind) {
  if (path.empty()) {
    write_family(std::cout, F, U);
    return;
  }
  std::ofstream os(path);
  if (!os) throw usage_error("cannot write " + path);
  write_family(os, F, U);
  out.object({{"family", kind}, {"fieldSpec", F.spec_string()}, {"size", U.size()}, {"file", path}});
}

FamilyFile load_family(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw usage_error("cannot read " + path);
  try {
    return read_family(is);
  } catch (const family_parse_error& e) {
    throw usage_error(path + ":" + e.what());
  }
}

Report verify_file(const std::string& path, int t) {
  Stopwatch clock;
  const auto ff = load_family(path);
  const Field& F = ff.field;
  const Family& U = ff.family;
  Report r;
  r.claim_id = "family-verify";
  r.field_spec = F.spec_string();
  r.parameters["t"] = t;
  r.parameters["k"] = U.k();
  r.notes = ff.warnings;
  r.counters["size"] = static_cast<std::int64_t>(U.size());
  r.counters["duplicatesRemoved"] = static_cast<std::int64_t>(U.duplicates_removed());
  if (t < 1 || t > U.k()) throw usage_error("--t must satisfy 1 <= t <= k");
  const auto inter = is_t_intersecting(F, U, t);
  const auto pt = common_point(F, U);
  r.parameters["commonPoint"] = pt ? point_json(*pt) : json(nullptr);
  if (!inter.ok) {
    r.fail({{"pair", json::array({format_poly(U[inter.witness->first]), format_poly(U[inter.witness->second])})}});
  } else {
    const bool inj = top_coeff_injective(F, U, t);
    r.parameters["topCoeffInjective"] = inj;
    if (!inj) r.fail({{"topCoefficients", "not injective"}});
    if (!pt) r.notes.push_back("HM-type: intersecting without a common point");
  }
  if (U.k() >= 2) r.parameters["exceedsStabilityThreshold"] = stability_exceeds(F, U.size(), U.k());
  r.wall_time_ms = clock.elapsed_ms();
  return r;
}

// Header line, then one row per vertex: the adjacency bitset as 64-bit words,
// least significant bit = vertex 0, each word as 16 hex digits.
void dump_graph(std::ostream& os, const Field& F, const IntersectionGraph& g) {
  const std::size_t n = g.vertex_count();
  os << "# ffekr-graph v1 field=" << F.spec_string() << " k=" << g.k << " t=" << g.t
     << " relation=" << (g.relation == Relation::at_least ? "at-least" : "at-most") << " vertices=" << n << '\n';
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < (n + 63) / 64; ++w) {
      std::uint64_t word = 0;
      for (std::size_t b = 0; b < 64 && w * 64 + b < n; ++b)
        if (g.graph.adjacent(u, w * 64 + b)) word |= std::uint64_t{1} << b;
      os << (w ? " " : "") << std::hex << std::setw(16) << std::setfill('0') << word << std::dec;
    }
    os << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-field intersecting-family toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Emitter out;
  unsigned threads = 1;
  app.add_option("--format", out.format, "Report format")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--threads", threads, "Worker threads for parallel scans")->check(CLI::Range(1u, 256u));
  app.add_flag("--deterministic", out.deterministic, "Zero wall-clock fields for byte-stable output");
  app.set_version_flag("--version", kToolVersion);

  std::string field_spec = "5^1";
  std::uint64_t seed = kDefaultSeed;
  auto add_field = [&](CLI::App* c) { c->add_option("--field", field_spec, "Field spec p^n or p^n/c0,...,cn")->required(); };

  // field
  auto* field_cmd = app.add_subcommand("field", "Field tables and element arithmetic");
  field_cmd->require_subcommand(1);
  auto* field_info = field_cmd->add_subcommand("info", "Modulus, generator and order");
  add_field(field_info);
  auto* field_arith = field_cmd->add_subcommand("arith", "One field operation on element indices");
  add_field(field_arith);
  std::string op;
  std::uint64_t ea = 0, eb = 0;
  field_arith->add_option("--op", op)->required()->check(
      CLI::IsMember({"add", "sub", "mul", "div", "pow", "inv", "neg", "trace", "norm", "chi", "sqrt"}));
  field_arith->add_option("--a", ea)->required();
  field_arith->add_option("--b", eb, "Second operand (or exponent for pow)");

  // poly
  auto* poly_cmd = app.add_subcommand("poly", "Polynomial graphs");
  poly_cmd->require_subcommand(1);
  std::string poly_f, poly_g;
  auto* poly_eval = poly_cmd->add_subcommand("eval", "Value table of a polynomial");
  add_field(poly_eval);
  poly_eval->add_option("--poly", poly_f, "Coefficient indices, constant first")->required();
  auto* poly_inter = poly_cmd->add_subcommand("intersect", "Common points of two graphs");
  add_field(poly_inter);
  poly_inter->add_option("--f", poly_f)->required();
  poly_inter->add_option("--g", poly_g)->required();

  // directions
  auto* dir_cmd = app.add_subcommand("directions", "Direction sets");
  dir_cmd->require_subcommand(1);
  auto* dir_carlitz = dir_cmd->add_subcommand("carlitz", "Scan functions with a proper additive direction span");
  add_field(dir_carlitz);
  CarlitzOptions copt;
  std::string mode = "exhaustive";
  dir_carlitz->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sample"}));
  dir_carlitz->add_option("--samples", copt.samples);
  dir_carlitz->add_option("--seed", copt.seed);
  dir_carlitz->add_option("--budget", copt.budget, "Largest q^q enumerated exhaustively");
  auto* dir_set = dir_cmd->add_subcommand("set", "Direction set of a function given by its value table");
  add_field(dir_set);
  std::string values;
  dir_set->add_option("--values", values, "sigma(0),...,sigma(q-1)")->required();

  // charsum
  auto* cs_cmd = app.add_subcommand("charsum", "Quadratic character sums and square scans");
  cs_cmd->require_subcommand(1);
  std::uint32_t samples = 1000, max_degree = 5, delta = 2, frob_k = 1;
  auto* cs_weil = cs_cmd->add_subcommand("weil", "Weil bound, for one polynomial or a seeded sample");
  add_field(cs_weil);
  cs_weil->add_option("--poly", poly_f);
  cs_weil->add_option("--samples", samples);
  cs_weil->add_option("--degree", max_degree, "Largest sampled degree");
  cs_weil->add_option("--seed", seed);
  auto* cs_quad = cs_cmd->add_subcommand("quad", "Closed form of quadratic sums, for one quadratic or all");
  add_field(cs_quad);
  cs_quad->add_option("--poly", poly_f, "c,b,a for a x^2 + b x + c");
  auto* cs_short = cs_cmd->add_subcommand("shortcut", "Square values of a x^(s+1) + d x^s + b x + c, q = s^2");
  add_field(cs_short);
  auto* cs_mc = cs_cmd->add_subcommand("mcconnel", "Functions with (f(x)-f(y))/(x-y) in the delta-th powers");
  add_field(cs_mc);
  cs_mc->add_option("--delta", delta)->required();
  auto* cs_sq = cs_cmd->add_subcommand("square-test", "Perfect-square test, or the Frobenius-shape scan");
  add_field(cs_sq);
  cs_sq->add_option("--poly", poly_f);
  cs_sq->add_option("--k", frob_k, "Frobenius exponent for the scan");

  // families
  auto* fam_cmd = app.add_subcommand("families", "Intersecting families");
  fam_cmd->require_subcommand(1);
  auto* fam_con = fam_cmd->add_subcommand("construct", "Write a family file");
  fam_con->require_subcommand(1);
  std::string point = "0,0", line = "0,0", out_path, file_path;
  int k = 2, t = 1;
  auto* con_pencil = fam_con->add_subcommand("pencil", "All degree-<=k polynomials through a point");
  add_field(con_pencil);
  con_pencil->add_option("--point", point);
  con_pencil->add_option("--k", k);
  con_pencil->add_option("--out", out_path);
  auto* con_hm = fam_con->add_subcommand("hm", "Hilton-Milner type family");
  add_field(con_hm);
  con_hm->add_option("--point", point)->required();
  con_hm->add_option("--line", line, "v,w for y = v x + w")->required();
  con_hm->add_option("--out", out_path);
  auto* con_tan = fam_con->add_subcommand("tangent", "Quadratics tangent to f (odd q)");
  add_field(con_tan);
  std::string tan_poly = "0,0,1";
  con_tan->add_option("--poly", tan_poly, "c,b,a for f = a x^2 + b x + c");
  con_tan->add_option("--out", out_path);
  auto* fam_verify = fam_cmd->add_subcommand("verify", "Check a family file");
  fam_verify->add_option("--file", file_path)->required();
  fam_verify->add_option("--t", t);
  auto* fam_extend = fam_cmd->add_subcommand("extend", "Extend a family to its pencil(s)");
  fam_extend->add_option("--file", file_path)->required();
  fam_extend->add_option("--out", out_path);
  auto* fam_thr = fam_cmd->add_subcommand("threshold", "Compare a size with the stability threshold");
  add_field(fam_thr);
  std::uint64_t size = 0;
  fam_thr->add_option("--size", size)->required();
  fam_thr->add_option("--k", k);

  // search
  auto* s_cmd = app.add_subcommand("search", "Exact clique oracles");
  s_cmd->require_subcommand(1);
  std::uint64_t budget = kDefaultNodeBudget;
  std::size_t cap = kDefaultVertexCap;
  ProbeOptions popt;
  auto* s_ekr = s_cmd->add_subcommand("ekr", "Maximum intersecting family by exact clique search");
  add_field(s_ekr);
  s_ekr->add_option("--k", k);
  s_ekr->add_option("--budget", budget);
  auto* s_clique = s_cmd->add_subcommand("clique", "Maximum clique of a t-intersection graph");
  add_field(s_clique);
  std::string relation = "at-least";
  s_clique->add_option("--k", k);
  s_clique->add_option("--t", t);
  s_clique->add_option("--relation", relation)->check(CLI::IsMember({"at-least", "at-most"}));
  s_clique->add_option("--budget", budget);
  s_clique->add_option("--cap", cap, "Vertex cap");
  auto* s_probe = s_cmd->add_subcommand("probe", "Random maximal intersecting families vs. the threshold");
  add_field(s_probe);
  s_probe->add_option("--trials", popt.trials);
  s_probe->add_option("--seed", popt.seed);
  s_probe->add_option("--cap", popt.cap, "Vertex cap");
  auto* s_sam0 = s_cmd->add_subcommand("sam0", "Agreement-count bounds by exact clique search");
  add_field(s_sam0);
  s_sam0->add_option("--k", k);
  s_sam0->add_option("--t", t);
  s_sam0->add_option("--budget", budget);
  auto* s_root = s_cmd->add_subcommand("rootable", "Count of v with d x^2 + v x + w rootable");
  add_field(s_root);
  auto* s_graph = s_cmd->add_subcommand("graph", "Dump a t-intersection graph as adjacency bitsets");
  add_field(s_graph);
  s_graph->add_option("--k", k);
  s_graph->add_option("--t", t);
  s_graph->add_option("--relation", relation)->check(CLI::IsMember({"at-least", "at-most"}));
  s_graph->add_option("--cap", cap, "Vertex cap");
  s_graph->add_option("--out", out_path);

  // suite
  auto* suite = app.add_subcommand("suite", "Run every claim at the chosen tier");
  std::string tier = tier_default();
  suite->add_option("--tier", tier, "fast, full or extended (default: $FFEKR_TIER or fast)")
      ->check(CLI::IsMember({"fast", "full", "extended"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (field_info->parsed()) {
      const Field F = load_field(field_spec);
      out.object({{"fieldSpec", F.spec_string()},
                  {"p", F.p()},
                  {"n", F.n()},
                  {"q", F.q()},
                  {"modulus", F.modulus()},
                  {"generator", F.generator().v},
                  {"squareOrder", F.is_square_order()}});
    } else if (field_arith->parsed()) {
      const Field F = load_field(field_spec);
      const Fe a = F.element(ea);
      json res;
      if (op == "add") res = F.add(a, F.element(eb)).v;
      else if (op == "sub") res = F.sub(a, F.element(eb)).v;
      else if (op == "mul") res = F.mul(a, F.element(eb)).v;
      else if (op == "div") res = F.div(a, F.element(eb)).v;
      else if (op == "pow") res = F.pow(a, eb).v;
      else if (op == "inv") res = F.inv(a).v;
      else if (op == "neg") res = F.neg(a).v;
      else if (op == "trace") res = F.trace(a).v;
      else if (op == "norm") res = F.norm(a).v;
      else if (op == "chi") res = F.quadratic_character(a);
      else {
        const auto s = F.sqrt(a);
        res = s ? json(s->v) : json(nullptr);
      }
      out.object({{"fieldSpec", F.spec_string()}, {"op", op}, {"a", ea}, {"b", eb}, {"result", res}});
    } else if (poly_eval->parsed()) {
      const Field F = load_field(field_spec);
      const auto f = parse_poly(F, poly_f);
      std::vector<Fe> vals;
      for (std::uint32_t x = 0; x < F.q(); ++x) vals.push_back(eval(F, f, Fe{x}));
      out.object({{"fieldSpec", F.spec_string()}, {"poly", format_poly(f)}, {"values", elements_json(vals)}});
    } else if (poly_inter->parsed()) {
      const Field F = load_field(field_spec);
      const auto f = parse_poly(F, poly_f), g = parse_poly(F, poly_g);
      require_same_bound(f, g);
      json pts = json::array();
      if (f != g)
        for (std::uint32_t x = 0; x < F.q(); ++x)
          if (eval(F, f, Fe{x}) == eval(F, g, Fe{x})) pts.push_back(json::array({x, eval(F, f, Fe{x}).v}));
      out.object({{"fieldSpec", F.spec_string()}, {"f", format_poly(f)}, {"g", format_poly(g)},
                  {"count", intersection_count(F, f, g)}, {"points", pts}});
    } else if (dir_carlitz->parsed()) {
      const Field F = load_field(field_spec);
      copt.mode = mode == "sample" ? CarlitzOptions::Mode::sample : CarlitzOptions::Mode::exhaustive;
      copt.threads = threads;
      try {
        out.report(carlitz_scan(F, copt));
      } catch (const budget_error& e) {
        Report r;
        r.claim_id = "carlitz-additive-directions";
        r.field_spec = F.spec_string();
        r.verdict = Verdict::budget_exceeded;
        r.witnesses.push_back({{"reason", e.what()}});
        out.report(r);
      }
    } else if (dir_set->parsed()) {
      const Field F = load_field(field_spec);
      FuncTable sigma{parse_poly(F, values).coeffs};
      if (sigma.values.size() != F.q()) throw usage_error("--values needs exactly q entries");
      const auto ds = direction_set(F, sigma);
      out.object({{"fieldSpec", F.spec_string()}, {"directions", elements_json(ds.members)},
                  {"spanDim", ds.span_dim}, {"affine", is_affine(F, sigma)}});
    } else if (cs_weil->parsed()) {
      const Field F = load_field(field_spec);
      if (poly_f.empty()) {
        out.report(weil_sample_scan(F, samples, max_degree, seed));
      } else {
        const auto f = dense(parse_poly(F, poly_f));
        const auto res = weil_check(F, f, F.one());
        Report r;
        r.claim_id = "weil-bound-quadratic-character";
        r.field_spec = F.spec_string();
        r.parameters["poly"] = poly_f;
        r.counters["sum"] = res.sum_value;
        r.counters["distinctRoots"] = res.distinct_roots;
        if (res.is_square_shape) {
          r.verdict = Verdict::inapplicable;
          r.notes.push_back("constant times a perfect square: bound not claimed");
        } else if (!res.within_bound) {
          r.fail({{"poly", poly_f}, {"sum", res.sum_value}});
        }
        out.report(r);
      }
    } else if (cs_quad->parsed()) {
      const Field F = load_field(field_spec);
      if (poly_f.empty()) {
        out.report(quad_sum_scan(F));
      } else {
        const auto f = parse_poly(F, poly_f);
        if (f.coeffs.size() != 3) throw usage_error("--poly needs c,b,a");
        Report r;
        r.claim_id = "quadratic-character-sum-identity";
        r.field_spec = F.spec_string();
        r.parameters["poly"] = poly_f;
        const auto closed = quad_sum_exact(F, f.coeffs[2], f.coeffs[1], f.coeffs[0]);
        const auto direct = char_sum(F, dense(f), F.one());
        r.counters["closedForm"] = closed;
        r.counters["direct"] = direct;
        if (closed != direct) r.fail({{"poly", poly_f}, {"closedForm", closed}, {"direct", direct}});
        out.report(r);
      }
    } else if (cs_short->parsed()) {
      out.report(shortcut_scan(load_field(field_spec)));
    } else if (cs_mc->parsed()) {
      out.report(mcconnel_report(load_field(field_spec), delta));
    } else if (cs_sq->parsed()) {
      const Field F = load_field(field_spec);
      if (poly_f.empty()) {
        out.report(frobenius_square_scan(F, frob_k));
      } else {
        const auto g = perfect_square_test(F, dense(parse_poly(F, poly_f)));
        json root = nullptr;
        if (g) root = elements_json(g->coeffs);
        out.object({{"fieldSpec", F.spec_string()}, {"poly", poly_f}, {"perfectSquare", g.has_value()}, {"root", root}});
      }
    } else if (con_pencil->parsed()) {
      const Field F = load_field(field_spec);
      const auto [a, b] = parse_pair(F, point, "--point");
      emit_family(out, F, pencil(F, a, b, k), out_path, "pencil");
    } else if (con_hm->parsed()) {
      const Field F = load_field(field_spec);
      const auto [x, y] = parse_pair(F, point, "--point");
      const auto [v, w] = parse_pair(F, line, "--line");
      emit_family(out, F, hilton_milner(F, {x, y}, v, w), out_path, "hilton-milner");
    } else if (con_tan->parsed()) {
      const Field F = load_field(field_spec);
      const auto f = parse_poly(F, tan_poly);
      if (f.coeffs.size() != 3) throw usage_error("--poly needs c,b,a");
      emit_family(out, F, tangent_family(F, f.coeffs[2], f.coeffs[1], f.coeffs[0]), out_path, "tangent");
    } else if (fam_verify->parsed()) {
      out.report(verify_file(file_path, t));
    } else if (fam_extend->parsed()) {
      const auto ff = load_family(file_path);
      const Field& F = ff.field;
      Report r;
      r.claim_id = "pencil-extension";
      r.field_spec = F.spec_string();
      r.notes = ff.warnings;
      try {
        const auto ext = extend_unique(F, ff.family);
        json pts = json::array();
        for (const auto& p : ext.points) pts.push_back(point_json(p));
        r.parameters["commonPoints"] = pts;
        r.parameters["unique"] = ext.unique;
        r.counters["candidates"] = static_cast<std::int64_t>(ext.candidates.size());
        if (ext.unique && !out_path.empty()) {
          std::ofstream os(out_path);
          write_family(os, F, ext.candidates.front());
        }
      } catch (const no_common_point&) {
        r.verdict = Verdict::inapplicable;
        r.notes.push_back("no common point: not contained in any pencil");
      }
      out.report(r);
    } else if (fam_thr->parsed()) {
      const Field F = load_field(field_spec);
      out.object({{"fieldSpec", F.spec_string()}, {"k", k}, {"size", size},
                  {"exceeds", stability_exceeds(F, size, k)}, {"minExceedingSize", stability_min_size(F.q(), k)}});
    } else if (s_ekr->parsed()) {
      out.report(ekr_oracle(load_field(field_spec), k, budget));
    } else if (s_clique->parsed()) {
      const Field F = load_field(field_spec);
      const auto rel = relation == "at-least" ? Relation::at_least : Relation::at_most;
      Report r;
      r.claim_id = "max-clique";
      r.field_spec = F.spec_string();
      r.parameters["k"] = k;
      r.parameters["t"] = t;
      r.parameters["relation"] = relation;
      try {
        const auto g = build_graph(F, k, t, rel, cap);
        const auto res = max_clique(g, budget);
        r.counters["vertices"] = static_cast<std::int64_t>(g.vertex_count());
        r.counters["maxClique"] = static_cast<std::int64_t>(res.size);
        r.counters["nodesExplored"] = static_cast<std::int64_t>(res.nodes_explored);
        json w = json::array();
        for (auto v : res.witness) w.push_back(format_poly(unpack(F, k, v)));
        r.parameters["clique"] = w;
        if (!res.proven) r.verdict = Verdict::budget_exceeded, r.witnesses.push_back({{"bestFound", res.size}});
      } catch (const budget_error& e) {
        r.verdict = Verdict::budget_exceeded;
        r.witnesses.push_back({{"reason", e.what()}});
      }
      out.report(r);
    } else if (s_probe->parsed()) {
      out.report(stability_probe(load_field(field_spec), popt));
    } else if (s_sam0->parsed()) {
      out.report(sam0_check(load_field(field_spec), k, t, budget));
    } else if (s_root->parsed()) {
      out.report(rootable_scan(load_field(field_spec)));
    } else if (s_graph->parsed()) {
      const Field F = load_field(field_spec);
      const auto g = build_graph(F, k, t, relation == "at-least" ? Relation::at_least : Relation::at_most, cap);
      if (out_path.empty()) {
        dump_graph(std::cout, F, g);
      } else {
        std::ofstream os(out_path);
        dump_graph(os, F, g);
        out.object({{"fieldSpec", F.spec_string()}, {"vertices", g.vertex_count()}, {"edges", g.graph.edge_count()}, {"file", out_path}});
      }
    } else if (suite->parsed()) {
      const Tier tr = parse_tier(tier);
      for (const auto& entry : suite_entries(tr, threads)) {
        try {
          out.report(entry.run());
        } catch (const budget_error& e) {
          Report r;
          r.claim_id = entry.claim_id;
          r.field_spec = entry.field_spec;
          r.verdict = Verdict::budget_exceeded;
          r.witnesses.push_back({{"reason", e.what()}});
          out.report(r);
        }
      }
    }
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return out.failed() ? 1 : 0;
}
