// Command-line front end: solve instances, compare domains against the
// brute-force consistency reference, run the verification oracles, and drive
// the occurrence benchmark.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gensup/oracle.hpp"
#include "gensup/solver.hpp"

using namespace gensup;

namespace {

std::string domain_text(const Domain& d) {
  std::string out = "{";
  bool first = true;
  for (int v : d.values()) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw error("cannot write '" + path + "'");
  out << content;
}

int run_solve(const std::string& path, bool all, std::uint64_t node_limit,
              bool have_limit, const std::string& occ_mode,
              const std::string& stats_path, std::size_t print_limit) {
  Instance inst = load_instance(path);
  SearchConfig cfg;
  cfg.find_all = all;
  if (have_limit) cfg.node_limit = node_limit;
  cfg.occ_mode = occ_mode == "static" ? OccMode::kStatic : OccMode::kWatched;
  cfg.solution_store_cap = print_limit;
  SolveResult res = solve(inst, cfg);
  for (const Tuple& t : res.solutions) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) std::cout << ' ';
      std::cout << inst.vars[i].id.name << '=' << t[i];
    }
    std::cout << '\n';
  }
  if (res.stats.solutions > res.solutions.size())
    std::cout << "... (" << res.stats.solutions - res.solutions.size()
              << " more not shown)\n";
  std::cout << "solutions=" << res.stats.solutions
            << " nodes=" << res.stats.nodes << " limit_hit="
            << (res.stats.limit_hit ? "true" : "false")
            << " wall_ms=" << res.stats.wall_ms << '\n';
  if (!stats_path.empty()) write_file(stats_path, stats_to_json(res.stats));
  return 0;
}

int run_check_gac(const std::string& path) {
  Instance inst = load_instance(path);
  Signature root = inst.root_signature();
  for (std::size_t i = 0; i < inst.constraints.size(); ++i) {
    const ConstraintSpec& spec = inst.constraints[i].spec;
    Signature gac = gac_signature(spec, root);
    std::cout << "constraint " << i << " (" << kind_name(spec) << "): ";
    bool changed = false;
    for (const VarId& v : scope_of(spec).distinct_vars()) {
      if (gac.at(v) == root.at(v)) continue;
      if (!changed) std::cout << '\n';
      changed = true;
      std::cout << "  " << v.name << ": " << domain_text(root.at(v)) << " -> "
                << domain_text(gac.at(v)) << '\n';
    }
    if (!changed) std::cout << "consistent\n";
  }
  return 0;
}

std::string signature_text(const Signature& sig) {
  std::string out;
  for (const auto& [v, d] : sig.domains())
    out += "#   " + v.name + " in " + domain_text(d) + "\n";
  return out;
}

std::string counterexample_file(const Signature& sig, const std::string& note,
                                const std::string& constraint_line,
                                const std::vector<std::string>& vec_lines) {
  std::string out = "# " + note + "\n";
  for (const auto& [v, d] : sig.domains()) {
    out += "varset " + v.name;
    for (int val : d.values()) out += " " + std::to_string(val);
    out += "\n";
  }
  for (const std::string& l : vec_lines) out += l + "\n";
  out += constraint_line + "\n";
  return out;
}

struct VerifyTargets {
  std::vector<SupportProperty> props;
  std::vector<PurePropagator> impls;
  ConstraintSpec spec;
  std::string constraint_line;
  std::vector<std::string> vec_lines;
};

// One family member: element over k vector variables, or an occurrence
// constraint with parameters (a, c).
VerifyTargets element_targets(int k, int max_val) {
  VerifyTargets t;
  std::vector<VarId> xs;
  std::string vec_line = "vec X";
  for (int i = 0; i < k; ++i) {
    xs.emplace_back("x" + std::to_string(i));
    vec_line += " x" + std::to_string(i);
  }
  ElementSpec spec{Schema(xs), VarId("y"), VarId("z")};
  t.spec = spec;
  t.props = {element_p1_property(spec), element_p2_property(spec),
             element_p3_property(spec)};
  t.impls = {
      [spec](const Signature& s, const SupportSet& lost) {
        return element_p1(spec, s, lost);
      },
      [spec](const Signature& s, const SupportSet&) {
        return element_p2(spec, s);
      },
      [spec](const Signature& s, const SupportSet&) {
        return element_p3(spec, s);
      }};
  t.constraint_line = "element X y z";
  t.vec_lines = {vec_line};
  (void)max_val;
  return t;
}

VerifyTargets occ_targets(bool leq, int k, int a, int c) {
  VerifyTargets t;
  std::vector<VarId> xs;
  std::string vec_line = "vec X";
  for (int i = 0; i < k; ++i) {
    xs.emplace_back("x" + std::to_string(i));
    vec_line += " x" + std::to_string(i);
  }
  if (leq) {
    OccurrenceLeqSpec spec{Schema(xs), a, c};
    t.spec = spec;
    t.props = {occurrence_leq_property(spec)};
    t.impls = {[spec](const Signature& s, const SupportSet& lost) {
      return occurrence_leq(spec, s, lost);
    }};
    t.constraint_line =
        "occurrenceleq X " + std::to_string(a) + " " + std::to_string(c);
  } else {
    OccurrenceGeqSpec spec{Schema(xs), a, c};
    t.spec = spec;
    t.props = {occurrence_geq_property(spec)};
    t.impls = {[spec](const Signature& s, const SupportSet& lost) {
      return occurrence_geq(spec, s, lost);
    }};
    t.constraint_line =
        "occurrencegeq X " + std::to_string(a) + " " + std::to_string(c);
  }
  t.vec_lines = {vec_line};
  return t;
}

int run_verify(const std::string& family, int max_vars, int max_val,
               const std::string& check, const std::string& emit) {
  bool any_counterexample = false;
  auto report = [&](const std::string& label, const std::string& detail,
                    const Signature* sig, const VerifyTargets& t) {
    std::cout << label << ": " << (detail.empty() ? "none" : detail) << '\n';
    if (!detail.empty()) {
      any_counterexample = true;
      if (sig) std::cout << signature_text(*sig);
      if (sig && !emit.empty())
        write_file(emit, counterexample_file(*sig, label + ": " + detail,
                                             t.constraint_line, t.vec_lines));
    }
  };

  std::vector<std::pair<std::string, VerifyTargets>> members;
  if (family == "element") {
    for (int k = 1; k <= max_vars; ++k)
      members.push_back({"element k=" + std::to_string(k),
                         element_targets(k, max_val)});
  } else {
    bool leq = family == "occleq";
    for (int k = 1; k <= max_vars; ++k)
      for (int a = 1; a <= max_val; ++a)
        for (int c = 0; c <= k + 1; ++c)
          members.push_back({family + " k=" + std::to_string(k) +
                                 " a=" + std::to_string(a) +
                                 " c=" + std::to_string(c),
                             occ_targets(leq, k, a, c)});
  }

  for (auto& [label, t] : members) {
    Schema scope = scope_of(t.spec);
    Signature top;
    for (const VarId& v : scope.distinct_vars()) {
      if (family == "element" && v == VarId("y"))
        top.set(v, Domain::range(0, max_vars - 1));
      else if (family == "element")
        top.set(v, Domain::range(0, max_val));
      else
        top.set(v, Domain::range(1, max_val));
    }
    SignatureLattice lat = SignatureLattice::over(scope, top);
    for (std::size_t pi = 0; pi < t.props.size(); ++pi) {
      const SupportProperty& p = t.props[pi];
      std::string tag = label + " " + p.name + " " + check;
      auto universe = universe_for(p, top);
      if (check == "padmiss") {
        StabilityCheck r = p_admissible_check(p, top, universe);
        report(tag, r.found() ? "counterexample found" : "",
               r.found() ? &r.counterexample->wider : nullptr, t);
      } else if (check == "btstable") {
        StabilityCheck r = backtrack_stable_check(p, top, universe);
        report(tag, r.found() ? "counterexample found" : "",
               r.found() ? &r.counterexample->wider : nullptr, t);
      } else if (check == "sound") {
        auto r = check_sound({p}, t.spec, lat);
        report(tag, r.clean() ? "" : "unsound singleton",
               r.clean() ? nullptr : &*r.counterexample, t);
      } else if (check == "complete") {
        auto r = check_complete({p}, t.spec, lat);
        report(tag, r.clean() ? "" : "incomplete signature",
               r.clean() ? nullptr : &*r.counterexample, t);
      } else if (check == "schema") {
        auto r = check_schema_conformance(t.impls[pi], p, lat);
        report(tag, r.clean() ? "" : r.violation->reason,
               r.clean() ? nullptr : &r.violation->sigma1, t);
      } else {
        throw error("unknown check '" + check + "'");
      }
    }
  }
  return any_counterexample ? 1 : 0;
}

int run_bench(int n, int copies, const std::string& limits_csv, int repeats,
              const std::string& csv_path, const std::string& emit_instance) {
  Instance inst = make_occurrence_benchmark(n, copies);
  if (!emit_instance.empty()) write_file(emit_instance, write_instance(inst));
  std::vector<std::uint64_t> limits;
  std::stringstream ss(limits_csv);
  for (std::string tok; std::getline(ss, tok, ',');)
    limits.push_back(std::stoull(tok));
  BenchReport report = bench_compare(inst, limits, repeats);
  std::string csv = report_csv(report);
  std::cout << csv;
  if (!csv_path.empty()) write_file(csv_path, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-domain propagation kernel"};
  app.require_subcommand(1);

  std::string file, occ_mode = "watched", stats_path;
  bool all = false;
  std::uint64_t node_limit = 0;
  std::size_t print_limit = 10;
  auto* solve_cmd = app.add_subcommand("solve", "search an instance file");
  solve_cmd->add_option("file", file)->required();
  solve_cmd->add_flag("--all", all, "count every solution");
  auto* limit_opt = solve_cmd->add_option("--node-limit", node_limit);
  solve_cmd->add_option("--occ-mode", occ_mode)
      ->check(CLI::IsMember({"watched", "static"}));
  solve_cmd->add_option("--stats-json", stats_path);
  solve_cmd->add_option("--print-limit", print_limit);

  std::string gac_file;
  auto* gac_cmd =
      app.add_subcommand("check-gac", "compare root domains against the "
                                      "brute-force consistency reference");
  gac_cmd->add_option("file", gac_file)->required();

  std::string family, check = "schema", emit;
  int max_vars = 2, max_val = 2;
  auto* verify_cmd =
      app.add_subcommand("verify", "run the exhaustive verification oracles");
  verify_cmd->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"element", "occleq", "occgeq"}));
  verify_cmd->add_option("--max-vars", max_vars);
  verify_cmd->add_option("--max-val", max_val);
  verify_cmd->add_option("--check", check)
      ->check(CLI::IsMember({"padmiss", "btstable", "sound", "complete",
                             "schema"}));
  verify_cmd->add_option("--emit", emit,
                         "write the first counterexample as an instance file");

  int n = 100, copies = 100, repeats = 3;
  std::string limits = "100000,1000000", csv_path, emit_instance;
  auto* bench_cmd = app.add_subcommand(
      "bench", "compare watched and static occurrence propagation");
  bench_cmd->add_option("--n", n);
  bench_cmd->add_option("--copies", copies);
  bench_cmd->add_option("--limits", limits);
  bench_cmd->add_option("--repeats", repeats);
  bench_cmd->add_option("--report-csv", csv_path);
  bench_cmd->add_option("--emit-instance", emit_instance);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed())
      return run_solve(file, all, node_limit, limit_opt->count() > 0, occ_mode,
                       stats_path, print_limit);
    if (gac_cmd->parsed()) return run_check_gac(gac_file);
    if (verify_cmd->parsed())
      return run_verify(family, max_vars, max_val, check, emit);
    if (bench_cmd->parsed())
      return run_bench(n, copies, limits, repeats, csv_path, emit_instance);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
