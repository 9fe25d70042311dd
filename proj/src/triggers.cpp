#include "gensup/triggers.hpp"

#include <algorithm>
#include <stdexcept>

#include "gensup/core.hpp"

namespace gensup {

TriggerStore::TriggerStore(std::vector<int> values_per_var) {
  reset(std::move(values_per_var));
}

void TriggerStore::reset(std::vector<int> values_per_var) {
  ps_.clear();
  watched_free_.clear();
  journal_.clear();
  by_prop_.clear();
  next_seq_ = 0;
  lit_base_.assign(values_per_var.size(), 0);
  std::size_t total = 0;
  for (std::size_t v = 0; v < values_per_var.size(); ++v) {
    lit_base_[v] = total;
    total += static_cast<std::size_t>(values_per_var[v]);
  }
  lit_lists_.assign(total, {});
  assign_lists_.assign(values_per_var.size(), {});
}

void TriggerStore::add_to_lists(int placement) {
  const Placement& p = ps_[placement];
  if (p.kind == TriggerKind::kStaticAssignment)
    assign_lists_[p.var].push_back(placement);
  else
    lit_lists_[lit_slot(p.var, p.pos)].push_back(placement);
  if (static_cast<std::size_t>(p.prop) >= by_prop_.size())
    by_prop_.resize(p.prop + 1);
  by_prop_[p.prop].push_back(placement);
}

void TriggerStore::drop_from_lists(int placement) {
  const Placement& p = ps_[placement];
  auto& list = p.kind == TriggerKind::kStaticAssignment
                   ? assign_lists_[p.var]
                   : lit_lists_[lit_slot(p.var, p.pos)];
  auto it = std::find(list.begin(), list.end(), placement);
  if (it != list.end()) {
    *it = list.back();
    list.pop_back();
  }
  auto& owned = by_prop_[p.prop];
  auto oit = std::find(owned.begin(), owned.end(), placement);
  if (oit != owned.end()) {
    *oit = owned.back();
    owned.pop_back();
  }
}

int TriggerStore::place(TriggerKind kind, int var, int pos, int prop,
                        int level) {
  int id;
  if (kind == TriggerKind::kWatchedLiteral && !watched_free_.empty()) {
    id = watched_free_.back();
    watched_free_.pop_back();
  } else {
    id = static_cast<int>(ps_.size());
    ps_.emplace_back();
  }
  ps_[id] = Placement{kind, var, pos, prop, next_seq_++, true};
  add_to_lists(id);
  if (kind == TriggerKind::kDynamicLiteral)
    journal_.push_back({id, true, level});
  return id;
}

void TriggerStore::unplace(int placement, int level) {
  Placement& p = ps_[placement];
  if (!p.active) throw error("unplace of inactive trigger placement");
  p.active = false;
  drop_from_lists(placement);
  if (p.kind == TriggerKind::kDynamicLiteral)
    journal_.push_back({placement, false, level});
  else if (p.kind == TriggerKind::kWatchedLiteral)
    watched_free_.push_back(placement);
}

void TriggerStore::unplace_literals_of(int prop, int level) {
  if (static_cast<std::size_t>(prop) >= by_prop_.size()) return;
  std::vector<int> owned = by_prop_[prop];
  for (int id : owned)
    if (ps_[id].kind != TriggerKind::kStaticAssignment) unplace(id, level);
}

std::vector<int> TriggerStore::on_remove(int var, int pos,
                                         bool became_assigned) const {
  std::vector<std::pair<std::uint64_t, int>> hits;
  for (int id : lit_lists_[lit_slot(var, pos)])
    hits.emplace_back(ps_[id].seq, ps_[id].prop);
  if (became_assigned)
    for (int id : assign_lists_[var])
      hits.emplace_back(ps_[id].seq, ps_[id].prop);
  std::sort(hits.begin(), hits.end());
  std::vector<int> props;
  for (const auto& [seq, prop] : hits)
    if (std::find(props.begin(), props.end(), prop) == props.end())
      props.push_back(prop);
  return props;
}

void TriggerStore::backtrack_to(int level) {
  while (!journal_.empty() && journal_.back().level > level) {
    JournalEntry e = journal_.back();
    journal_.pop_back();
    Placement& p = ps_[e.placement];
    if (e.placed) {
      if (p.active) {
        p.active = false;
        drop_from_lists(e.placement);
      }
    } else {
      if (!p.active) {
        p.active = true;
        add_to_lists(e.placement);
      }
    }
  }
}

std::vector<int> TriggerStore::placements_on_literal(int var, int pos) const {
  return lit_lists_[lit_slot(var, pos)];
}

std::vector<int> TriggerStore::placements_on_assignment(int var) const {
  return assign_lists_[var];
}

std::vector<int> TriggerStore::active_placements_of(int prop) const {
  if (static_cast<std::size_t>(prop) >= by_prop_.size()) return {};
  return by_prop_[prop];
}

}  // namespace gensup
