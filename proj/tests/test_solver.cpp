#include <doctest.h>

#include <algorithm>

#include "gensup/solver.hpp"

using namespace gensup;

namespace {

// The three-row fixture used throughout: the satisfying assignments of the
// worked sum example.
Instance table_sum_instance() {
  Instance inst;
  std::vector<VarId> xs;
  for (const char* n : {"x", "y", "z"}) {
    VarId id(n);
    inst.vars.push_back({id, Domain{0, 1}, true});
    xs.push_back(id);
  }
  inst.vecs.push_back({"V", xs});
  std::vector<Tuple> rows = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  inst.constraints.push_back({TableSpec{Schema(xs), rows}, "V"});
  return inst;
}

std::string strip_wall(std::string json) {
  auto at = json.find("\"wall_ms\"");
  REQUIRE(at != std::string::npos);
  auto end = json.find('\n', at);
  json.erase(at, end - at);
  return json;
}

}  // namespace

TEST_CASE("find-all over a table constraint") {
  SearchConfig cfg;
  cfg.find_all = true;
  SolveResult res = solve(table_sum_instance(), cfg);
  CHECK(res.stats.solutions == 3);
  REQUIRE(res.solutions.size() == 3);
  CHECK(std::find(res.solutions.begin(), res.solutions.end(),
                  Tuple{0, 1, 1}) != res.solutions.end());
  CHECK(res.stats.limit_hit == false);
}

TEST_CASE("first-solution search stops early") {
  SearchConfig cfg;
  SolveResult res = solve(table_sum_instance(), cfg);
  CHECK(res.stats.solutions == 1);
  REQUIRE(res.solutions.size() == 1);
  CHECK(res.solutions[0] == Tuple{0, 1, 1});  // smallest in branch order
}

TEST_CASE("element instance with a single solution") {
  Instance inst;
  inst.vars.push_back({VarId("x0"), Domain{5}, false});
  inst.vars.push_back({VarId("y"), Domain{0}, false});
  inst.vars.push_back({VarId("z"), Domain{4, 5}, false});
  inst.vecs.push_back({"X", {VarId("x0")}});
  inst.constraints.push_back(
      {ElementSpec{Schema{VarId("x0")}, VarId("y"), VarId("z")}, "X"});
  SearchConfig cfg;
  cfg.find_all = true;
  SolveResult res = solve(inst, cfg);
  CHECK(res.stats.solutions == 1);
  REQUIRE(res.solutions.size() == 1);
  CHECK(res.solutions[0] == Tuple{5, 0, 5});
}

TEST_CASE("root-infeasible occurrence solves to zero without branching") {
  Instance inst;
  VarId a("a"), b("b");
  inst.vars.push_back({a, Domain{1}, false});
  inst.vars.push_back({b, Domain{1, 2}, true});
  inst.vecs.push_back({"X", {a, b}});
  inst.constraints.push_back({OccurrenceLeqSpec{Schema{a, b}, 1, 0}, "X"});
  SearchConfig cfg;
  cfg.find_all = true;
  SolveResult res = solve(inst, cfg);
  CHECK(res.stats.solutions == 0);
  CHECK(res.stats.nodes == 0);
}

TEST_CASE("node limit zero reports root-only statistics") {
  SearchConfig cfg;
  cfg.find_all = true;
  cfg.node_limit = 0;
  SolveResult res = solve(table_sum_instance(), cfg);
  CHECK(res.stats.nodes == 0);
  CHECK(res.stats.solutions == 0);
  CHECK(res.stats.limit_hit);
}

TEST_CASE("node limit is never exceeded") {
  Instance inst = make_occurrence_benchmark(12, 4);
  SearchConfig cfg;
  cfg.find_all = true;
  cfg.node_limit = 37;
  SolveResult res = solve(inst, cfg);
  CHECK(res.stats.nodes <= 37);
  CHECK(res.stats.limit_hit);
}

TEST_CASE("stats serialization is byte-stable except for wall time") {
  Instance inst = make_occurrence_benchmark(10, 10);
  SearchConfig cfg;
  cfg.find_all = true;
  cfg.node_limit = 1000;
  std::string a = strip_wall(stats_to_json(solve(inst, cfg).stats));
  std::string b = strip_wall(stats_to_json(solve(inst, cfg).stats));
  CHECK(a == b);
  CHECK(a.find("\"nodes\"") != std::string::npos);
  CHECK(a.find("\"prop_calls\"") != std::string::npos);
  CHECK(a.find("\"limit_hit\"") != std::string::npos);
}

TEST_CASE("watched and static modes agree on a small benchmark") {
  Instance inst = make_occurrence_benchmark(10, 10);
  BenchReport report = bench_compare(inst, {10000}, /*repeats=*/1);
  REQUIRE(report.rows.size() == 2);
  const BenchRow& watched = report.rows[0];
  const BenchRow& fixed = report.rows[1];
  CHECK(watched.mode == OccMode::kWatched);
  CHECK(fixed.mode == OccMode::kStatic);
  CHECK(watched.nodes == fixed.nodes);
  CHECK(watched.solutions == fixed.solutions);
  CHECK(watched.occ_calls < fixed.occ_calls);
  std::string csv = report_csv(report);
  CHECK(csv.find("10000,watched,") != std::string::npos);
  CHECK(csv.find("10000,static,") != std::string::npos);
}

TEST_CASE("solution counts match a brute-force sweep") {
  // Exhaustive cross-check on the scaled benchmark: enumerate assignments
  // directly and compare with search in both modes.
  Instance inst = make_occurrence_benchmark(8, 2);
  Signature root = inst.root_signature();
  Schema all([&] {
    std::vector<VarId> vs;
    for (const VarDecl& v : inst.vars) vs.push_back(v.id);
    return vs;
  }());
  std::uint64_t expected = 0;
  for (const Tuple& t : tuples_of(all, root)) {
    bool ok = true;
    for (const ConstraintDecl& c : inst.constraints) {
      Schema scope = scope_of(c.spec);
      Tuple proj;
      for (const VarId& v : scope) {
        std::size_t at = 0;
        while (!(inst.vars[at].id == v)) ++at;
        proj.push_back(t[at]);
      }
      if (!check_tuple(c.spec, proj)) {
        ok = false;
        break;
      }
    }
    if (ok) ++expected;
  }
  REQUIRE(expected > 0);
  for (OccMode mode : {OccMode::kWatched, OccMode::kStatic}) {
    SearchConfig cfg;
    cfg.find_all = true;
    cfg.occ_mode = mode;
    SolveResult res = solve(inst, cfg);
    CHECK(res.stats.solutions == expected);
    CHECK_FALSE(res.stats.limit_hit);
  }
}
