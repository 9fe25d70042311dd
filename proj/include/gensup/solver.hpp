#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "gensup/engine.hpp"

namespace gensup {

/// Binary branching (assign the smallest value, else remove it) over the
/// variables in declaration order. Every branch taken counts as one node.
struct SearchConfig {
  bool find_all = false;
  std::optional<std::uint64_t> node_limit;
  OccMode occ_mode = OccMode::kWatched;
  std::size_t solution_store_cap = 32;  // solutions kept in memory; the count is exact
};

struct RunStats {
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  std::map<std::string, std::uint64_t> prop_calls;
  std::int64_t wall_ms = 0;
  bool limit_hit = false;
};

struct SolveResult {
  RunStats stats;
  std::vector<Tuple> solutions;  // values in variable declaration order
};

SolveResult solve(const Instance& inst, const SearchConfig& cfg);

/// Stable serialization; keys are sorted and wall_ms is the only
/// run-dependent field.
std::string stats_to_json(const RunStats& stats);

struct BenchRow {
  std::uint64_t limit = 0;
  OccMode mode = OccMode::kWatched;
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  std::uint64_t occ_calls = 0;
  std::int64_t wall_ms = 0;  // median over the repeats
};

struct BenchReport {
  std::vector<BenchRow> rows;  // one per (limit, mode), watched first
};

/// Runs the instance once per limit in each occurrence-propagation mode and
/// compares them. Node and solution counts must agree between modes at every
/// limit; divergence throws, since both propagations are sound and complete
/// for the same constraint.
BenchReport bench_compare(const Instance& inst,
                          const std::vector<std::uint64_t>& limits,
                          int repeats = 3);

std::string report_csv(const BenchReport& report);

}  // namespace gensup
