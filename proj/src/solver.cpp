#include "gensup/solver.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

namespace gensup {

namespace {

struct Search {
  Engine& eng;
  const SearchConfig& cfg;
  RunStats& stats;
  std::vector<Tuple>& solutions;
  bool stop = false;

  bool limit_reached() const {
    return cfg.node_limit && stats.nodes >= *cfg.node_limit;
  }

  int first_unassigned() const {
    const DomainStore& st = eng.store();
    for (int v = 0; v < st.var_count(); ++v)
      if (!st.assigned(v)) return v;
    return -1;
  }

  void leaf() {
    const DomainStore& st = eng.store();
    Tuple vals(static_cast<std::size_t>(st.var_count()));
    for (int v = 0; v < st.var_count(); ++v)
      vals[static_cast<std::size_t>(v)] = st.sole_value(v);
    // Every constraint is re-checked extensionally at the leaf; this is the
    // only check table constraints get.
    const auto& decls = eng.instance().constraints;
    const auto& scopes = eng.constraint_scopes();
    for (std::size_t c = 0; c < decls.size(); ++c) {
      Tuple proj;
      proj.reserve(scopes[c].size());
      for (int v : scopes[c])
        proj.push_back(vals[static_cast<std::size_t>(v)]);
      if (!check_tuple(decls[c].spec, proj)) return;
    }
    ++stats.solutions;
    if (solutions.size() < cfg.solution_store_cap) solutions.push_back(vals);
    if (!cfg.find_all) stop = true;
  }

  void dfs() {
    if (stop) return;
    int var = first_unassigned();
    if (var < 0) {
      leaf();
      return;
    }
    int pos = eng.store().first_present_pos(var);
    if (limit_reached()) {
      stats.limit_hit = true;
      stop = true;
      return;
    }
    ++stats.nodes;
    eng.push_level();
    if (eng.assign_and_propagate(var, pos)) dfs();
    eng.pop_level();
    if (stop) return;
    if (limit_reached()) {
      stats.limit_hit = true;
      stop = true;
      return;
    }
    ++stats.nodes;
    eng.push_level();
    if (eng.remove_and_propagate(var, pos)) dfs();
    eng.pop_level();
  }
};

}  // namespace

SolveResult solve(const Instance& inst, const SearchConfig& cfg) {
  SolveResult result;
  auto t0 = std::chrono::steady_clock::now();
  Engine eng(inst, cfg.occ_mode);
  if (eng.propagate_root()) {
    Search s{eng, cfg, result.stats, result.solutions};
    s.dfs();
  }
  auto t1 = std::chrono::steady_clock::now();
  result.stats.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  result.stats.prop_calls = eng.call_counts();
  return result;
}

std::string stats_to_json(const RunStats& stats) {
  nlohmann::json j;
  j["nodes"] = stats.nodes;
  j["solutions"] = stats.solutions;
  j["prop_calls"] = stats.prop_calls;
  j["wall_ms"] = stats.wall_ms;
  j["limit_hit"] = stats.limit_hit;
  return j.dump(2) + "\n";
}

namespace {

std::uint64_t occurrence_calls(const RunStats& stats) {
  std::uint64_t total = 0;
  for (const auto& [id, n] : stats.prop_calls)
    if (id.rfind("occurrence", 0) == 0) total += n;
  return total;
}

BenchRow run_mode(const Instance& inst, std::uint64_t limit, OccMode mode,
                  int repeats) {
  SearchConfig cfg;
  cfg.find_all = true;
  cfg.node_limit = limit;
  cfg.occ_mode = mode;
  cfg.solution_store_cap = 0;
  std::vector<std::int64_t> walls;
  BenchRow row;
  for (int r = 0; r < std::max(repeats, 1); ++r) {
    SolveResult res = solve(inst, cfg);
    if (r == 0) {
      row.limit = limit;
      row.mode = mode;
      row.nodes = res.stats.nodes;
      row.solutions = res.stats.solutions;
      row.occ_calls = occurrence_calls(res.stats);
    } else if (res.stats.nodes != row.nodes ||
               res.stats.solutions != row.solutions) {
      throw error("benchmark replay diverged between repeats");
    }
    walls.push_back(res.stats.wall_ms);
  }
  std::sort(walls.begin(), walls.end());
  row.wall_ms = walls[walls.size() / 2];
  return row;
}

}  // namespace

BenchReport bench_compare(const Instance& inst,
                          const std::vector<std::uint64_t>& limits,
                          int repeats) {
  BenchReport report;
  for (std::uint64_t limit : limits) {
    BenchRow w = run_mode(inst, limit, OccMode::kWatched, repeats);
    BenchRow s = run_mode(inst, limit, OccMode::kStatic, repeats);
    if (w.nodes != s.nodes || w.solutions != s.solutions)
      throw error("watched and static modes explored different trees at limit " +
                  std::to_string(limit));
    report.rows.push_back(w);
    report.rows.push_back(s);
  }
  return report;
}

std::string report_csv(const BenchReport& report) {
  std::string out = "limit,mode,nodes,solutions,occ_prop_calls,wall_ms\n";
  for (const BenchRow& r : report.rows) {
    out += std::to_string(r.limit);
    out += r.mode == OccMode::kWatched ? ",watched," : ",static,";
    out += std::to_string(r.nodes) + "," + std::to_string(r.solutions) + "," +
           std::to_string(r.occ_calls) + "," + std::to_string(r.wall_ms) +
           "\n";
  }
  return out;
}

}  // namespace gensup
