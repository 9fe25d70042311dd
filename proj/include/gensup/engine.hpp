#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "gensup/instance.hpp"
#include "gensup/triggers.hpp"

namespace gensup {

/// Trailed domain state over dense variable indices. Values live at fixed
/// positions (ascending value order); removal flips a presence flag and is
/// undone by mark-based backtracking.
class DomainStore {
 public:
  explicit DomainStore(std::vector<std::vector<int>> values_per_var);
  void reset(std::vector<std::vector<int>> values_per_var);

  int var_count() const { return static_cast<int>(vars_.size()); }
  int value_count(int v) const {
    return static_cast<int>(vars_[v].values.size());
  }
  int live(int v) const { return vars_[v].live; }
  bool present(int v, int p) const { return vars_[v].present[p] != 0; }
  int value(int v, int p) const { return vars_[v].values[p]; }
  /// Position of `value` in v's layout, or -1.
  int pos_of(int v, int value) const;
  bool assigned(int v) const { return vars_[v].live == 1; }
  int first_present_pos(int v) const;  // -1 when empty
  int last_present_pos(int v) const;
  int sole_value(int v) const;

  struct Removal {
    bool removed = false;
    bool emptied = false;
    bool assigned = false;
  };
  Removal remove(int v, int p);

  void push_mark();
  void pop_mark();

  std::vector<int> live_values(int v) const;
  Signature to_signature(const std::vector<VarId>& names) const;

 private:
  struct VarDom {
    std::vector<int> values;
    std::vector<std::uint8_t> present;
    int live = 0;
  };
  std::vector<VarDom> vars_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<std::size_t> marks_;
};

class Engine;

/// One propagator instance owned by an engine. `init` establishes the first
/// support at the root; `run` re-establishes it after the triggers fire.
/// Both return false when no support exists in any narrowing.
class Propagator {
 public:
  explicit Propagator(std::string id) : id_(std::move(id)) {}
  virtual ~Propagator() = default;

  const std::string& id() const { return id_; }
  std::uint64_t calls() const { return calls_; }

  virtual bool init(Engine& e) = 0;
  virtual bool run(Engine& e) = 0;
  virtual void reset() {}

 protected:
  /// Invalidated (var, pos) literals accumulated since the last run.
  const std::vector<std::pair<int, int>>& pending() const { return pending_; }

 private:
  friend class Engine;
  std::string id_;
  int idx_ = -1;
  std::uint64_t calls_ = 0;
  bool in_queue_ = false;
  bool inited_ = false;
  std::vector<std::pair<int, int>> pending_;
};

enum class OccMode { kWatched, kStatic };

/// Propagation engine: trailed domains, trigger dispatch and a FIFO
/// propagator queue run to fixpoint. Single-threaded; one engine per search.
class Engine {
 public:
  Engine(const Instance& inst, OccMode mode);

  /// Re-seeds every domain (same layout or a narrowing of it) and clears all
  /// propagator state; used by sweeps that replay many signatures.
  void reset_domains(std::vector<std::vector<int>> values_per_var);

  /// Establishes every propagator and runs the queue dry. False on failure.
  bool propagate_root();

  int level() const { return level_; }
  void push_level();
  void pop_level();
  /// Shrinks var to the single value at `pos`, then propagates to fixpoint.
  bool assign_and_propagate(int var, int pos);
  bool remove_and_propagate(int var, int pos);

  DomainStore& store() { return store_; }
  const DomainStore& store() const { return store_; }
  TriggerStore& triggers() { return triggers_; }

  /// Removal on behalf of a propagator; dispatches wakes. False when the
  /// domain would empty (failure is latched centrally).
  bool remove_value(int var, int pos);
  int place_trigger(TriggerKind kind, int var, int pos, Propagator& p);
  void replace_dynamic_support(
      Propagator& p, const std::vector<std::pair<int, int>>& literals);

  const std::vector<std::unique_ptr<Propagator>>& propagators() const {
    return props_;
  }
  const std::vector<VarId>& var_names() const { return names_; }
  int var_of(const VarId& v) const;
  const std::vector<std::vector<int>>& constraint_scopes() const {
    return scope_idx_;
  }
  const Instance& instance() const { return *inst_; }
  Signature current_signature() const {
    return store_.to_signature(names_);
  }
  bool failed() const { return failed_; }
  std::map<std::string, std::uint64_t> call_counts() const;

 private:
  friend class Propagator;
  void build_propagators(OccMode mode);
  void wake(int prop, int var, int pos);
  bool drain();
  int prop_index(const Propagator& p) const;

  const Instance* inst_;
  DomainStore store_;
  TriggerStore triggers_;
  std::vector<std::unique_ptr<Propagator>> props_;
  std::vector<VarId> names_;
  std::map<VarId, int> index_;
  std::vector<std::vector<int>> scope_idx_;  // per constraint, store indices
  std::deque<int> queue_;
  bool failed_ = false;
  int level_ = 0;
};

/// Runs the instance's propagators to fixpoint on `start` without searching.
/// Returns the narrowed signature, or nothing on failure.
std::optional<Signature> propagate_to_fixpoint(const Instance& inst,
                                               const Signature& start,
                                               OccMode mode = OccMode::kWatched);

}  // namespace gensup
