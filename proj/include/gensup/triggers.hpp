#pragma once

#include <cstdint>
#include <vector>

namespace gensup {

/// Static assignment triggers fire when a variable's domain shrinks to one
/// value and are never moved. Dynamic literal triggers are journalled and
/// restored as search backtracks. Watched literals survive backtracking
/// unchanged and are only ever moved by their owner.
enum class TriggerKind { kStaticAssignment, kDynamicLiteral, kWatchedLiteral };

/// Registry of trigger placements over a dense variable/value layout.
/// Variables are indices 0..n-1; literals are (variable, value position)
/// pairs in that variable's value list.
class TriggerStore {
 public:
  explicit TriggerStore(std::vector<int> values_per_var);
  void reset(std::vector<int> values_per_var);

  /// Registers a placement for `prop`. `pos` is ignored for assignment
  /// triggers. Dynamic placements are journalled at `level`.
  int place(TriggerKind kind, int var, int pos, int prop, int level);
  void unplace(int placement, int level);
  /// Drops every literal placement (dynamic and watched) owned by `prop`.
  void unplace_literals_of(int prop, int level);

  /// Propagators to wake for the removal of (var, pos): all literal
  /// placements on the literal, plus assignment placements when the domain
  /// became a singleton. Ordered by placement age, duplicates removed.
  std::vector<int> on_remove(int var, int pos, bool became_assigned) const;

  /// Undoes every dynamic placement change journalled above `level`.
  void backtrack_to(int level);

  bool active(int placement) const { return ps_[placement].active; }
  TriggerKind kind(int placement) const { return ps_[placement].kind; }
  std::vector<int> placements_on_literal(int var, int pos) const;
  std::vector<int> placements_on_assignment(int var) const;
  std::vector<int> active_placements_of(int prop) const;
  std::size_t journal_size() const { return journal_.size(); }

 private:
  struct Placement {
    TriggerKind kind;
    int var = 0;
    int pos = 0;
    int prop = 0;
    std::uint64_t seq = 0;
    bool active = false;
  };
  struct JournalEntry {
    int placement;
    bool placed;  // false: records an unplace
    int level;
  };

  std::size_t lit_slot(int var, int pos) const {
    return lit_base_[var] + static_cast<std::size_t>(pos);
  }
  void add_to_lists(int placement);
  void drop_from_lists(int placement);

  std::vector<Placement> ps_;
  std::vector<int> watched_free_;
  std::vector<std::size_t> lit_base_;
  std::vector<std::vector<int>> lit_lists_;
  std::vector<std::vector<int>> assign_lists_;
  std::vector<std::vector<int>> by_prop_;
  std::vector<JournalEntry> journal_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace gensup
