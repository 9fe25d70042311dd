#include "gensup/engine.hpp"

#include <algorithm>

namespace gensup {

DomainStore::DomainStore(std::vector<std::vector<int>> values_per_var) {
  reset(std::move(values_per_var));
}

void DomainStore::reset(std::vector<std::vector<int>> values_per_var) {
  vars_.clear();
  trail_.clear();
  marks_.clear();
  vars_.reserve(values_per_var.size());
  for (auto& vals : values_per_var) {
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    VarDom vd;
    vd.live = static_cast<int>(vals.size());
    vd.present.assign(vals.size(), 1);
    vd.values = std::move(vals);
    vars_.push_back(std::move(vd));
  }
}

int DomainStore::pos_of(int v, int value) const {
  const auto& vals = vars_[v].values;
  auto it = std::lower_bound(vals.begin(), vals.end(), value);
  if (it == vals.end() || *it != value) return -1;
  return static_cast<int>(it - vals.begin());
}

int DomainStore::first_present_pos(int v) const {
  const VarDom& vd = vars_[v];
  for (std::size_t p = 0; p < vd.present.size(); ++p)
    if (vd.present[p]) return static_cast<int>(p);
  return -1;
}

int DomainStore::last_present_pos(int v) const {
  const VarDom& vd = vars_[v];
  for (std::size_t p = vd.present.size(); p > 0; --p)
    if (vd.present[p - 1]) return static_cast<int>(p - 1);
  return -1;
}

int DomainStore::sole_value(int v) const {
  int p = first_present_pos(v);
  if (p < 0 || vars_[v].live != 1) throw error("variable is not assigned");
  return vars_[v].values[static_cast<std::size_t>(p)];
}

DomainStore::Removal DomainStore::remove(int v, int p) {
  Removal r;
  VarDom& vd = vars_[v];
  if (!vd.present[p]) return r;
  vd.present[p] = 0;
  --vd.live;
  trail_.emplace_back(v, p);
  r.removed = true;
  r.emptied = vd.live == 0;
  r.assigned = vd.live == 1;
  return r;
}

void DomainStore::push_mark() { marks_.push_back(trail_.size()); }

void DomainStore::pop_mark() {
  if (marks_.empty()) throw error("domain store has no mark to pop");
  std::size_t target = marks_.back();
  marks_.pop_back();
  while (trail_.size() > target) {
    auto [v, p] = trail_.back();
    trail_.pop_back();
    vars_[v].present[p] = 1;
    ++vars_[v].live;
  }
}

std::vector<int> DomainStore::live_values(int v) const {
  std::vector<int> out;
  const VarDom& vd = vars_[v];
  for (std::size_t p = 0; p < vd.values.size(); ++p)
    if (vd.present[p]) out.push_back(vd.values[p]);
  return out;
}

Signature DomainStore::to_signature(const std::vector<VarId>& names) const {
  Signature sig;
  for (std::size_t v = 0; v < names.size(); ++v)
    sig.set(names[v], Domain::of(live_values(static_cast<int>(v))));
  return sig;
}

namespace {

// ---------------------------------------------------------------------------
// Engine-side propagators. These mirror the signature-level functions in
// propagators.cpp on the trailed store, maintaining their trigger placements
// incrementally.

class ElementP1Prop final : public Propagator {
 public:
  ElementP1Prop(std::string id, std::vector<int> xs, int y, int z)
      : Propagator(std::move(id)), xs_(std::move(xs)), y_(y), z_(z) {}

  bool init(Engine& e) override { return establish(e); }
  bool run(Engine& e) override { return establish(e); }

 private:
  bool establish(Engine& e) {
    DomainStore& st = e.store();
    std::vector<std::pair<int, int>> lits;
    if (st.live(y_) > 1) {
      lits.push_back({y_, st.first_present_pos(y_)});
      lits.push_back({y_, st.last_present_pos(y_)});
    } else {
      int i = st.sole_value(y_);
      if (i < 0 || static_cast<std::size_t>(i) >= xs_.size()) return false;
      int xi = xs_[static_cast<std::size_t>(i)];
      std::vector<int> drop;
      int keep = 0;
      for (int p = 0; p < st.value_count(xi); ++p) {
        if (!st.present(xi, p)) continue;
        int zp = st.pos_of(z_, st.value(xi, p));
        if (zp >= 0 && st.present(z_, zp))
          ++keep;
        else
          drop.push_back(p);
      }
      if (keep == 0) return false;
      for (int p : drop)
        if (!e.remove_value(xi, p)) return false;
      for (int p = 0; p < st.value_count(xi); ++p)
        if (st.present(xi, p))
          lits.push_back({z_, st.pos_of(z_, st.value(xi, p))});
    }
    e.replace_dynamic_support(*this, lits);
    return true;
  }

  std::vector<int> xs_;
  int y_, z_;
};

class ElementP2Prop final : public Propagator {
 public:
  ElementP2Prop(std::string id, std::vector<int> xs, int y, int z)
      : Propagator(std::move(id)), xs_(std::move(xs)), y_(y), z_(z) {}

  bool init(Engine& e) override { return establish(e); }
  bool run(Engine& e) override { return establish(e); }

 private:
  bool establish(Engine& e) {
    DomainStore& st = e.store();
    std::vector<std::pair<int, int>> lits;
    std::vector<int> drop;
    int keep = 0;
    for (int py = 0; py < st.value_count(y_); ++py) {
      if (!st.present(y_, py)) continue;
      int i = st.value(y_, py);
      int witness = -1;
      if (i >= 0 && static_cast<std::size_t>(i) < xs_.size()) {
        int xi = xs_[static_cast<std::size_t>(i)];
        for (int p = 0; p < st.value_count(xi); ++p) {
          if (!st.present(xi, p)) continue;
          int zp = st.pos_of(z_, st.value(xi, p));
          if (zp >= 0 && st.present(z_, zp)) {
            witness = p;
            break;
          }
        }
        if (witness >= 0) {
          ++keep;
          lits.push_back({xi, witness});
          lits.push_back({z_, st.pos_of(z_, st.value(xi, witness))});
        }
      }
      if (witness < 0) drop.push_back(py);
    }
    if (keep == 0) return false;
    for (int py : drop)
      if (!e.remove_value(y_, py)) return false;
    e.replace_dynamic_support(*this, lits);
    return true;
  }

  std::vector<int> xs_;
  int y_, z_;
};

class ElementP3Prop final : public Propagator {
 public:
  ElementP3Prop(std::string id, std::vector<int> xs, int y, int z)
      : Propagator(std::move(id)), xs_(std::move(xs)), y_(y), z_(z) {}

  bool init(Engine& e) override { return establish(e); }
  bool run(Engine& e) override { return establish(e); }

 private:
  bool establish(Engine& e) {
    DomainStore& st = e.store();
    std::vector<std::pair<int, int>> lits;
    std::vector<int> drop;
    int keep = 0;
    for (int pz = 0; pz < st.value_count(z_); ++pz) {
      if (!st.present(z_, pz)) continue;
      int a = st.value(z_, pz);
      bool witnessed = false;
      for (int py = 0; py < st.value_count(y_); ++py) {
        if (!st.present(y_, py)) continue;
        int i = st.value(y_, py);
        if (i < 0 || static_cast<std::size_t>(i) >= xs_.size()) continue;
        int xi = xs_[static_cast<std::size_t>(i)];
        int xp = st.pos_of(xi, a);
        if (xp >= 0 && st.present(xi, xp)) {
          lits.push_back({xi, xp});
          lits.push_back({y_, py});
          witnessed = true;
          break;
        }
      }
      if (witnessed)
        ++keep;
      else
        drop.push_back(pz);
    }
    if (keep == 0) return false;
    for (int pz : drop)
      if (!e.remove_value(z_, pz)) return false;
    e.replace_dynamic_support(*this, lits);
    return true;
  }

  std::vector<int> xs_;
  int y_, z_;
};

// Watched at-most: |X|-c+1 watches on non-a literals. A lost watch is first
// repaired in place, then moved by scanning forward (with wraparound) from
// its index. When only |X|-c capable indices remain the value is pruned from
// all of them and the constraint is entailed for the subtree; dead watches
// stay parked so the support revalidates on backtracking.
class OccLeqWatchedProp final : public Propagator {
 public:
  OccLeqWatchedProp(std::string id, std::vector<int> xs, int a, int c)
      : Propagator(std::move(id)), xs_(std::move(xs)), a_(a), c_(c) {}

  void reset() override {
    watches_.clear();
    watched_.clear();
    pos_a_.clear();
  }

  bool init(Engine& e) override {
    DomainStore& st = e.store();
    const int k = static_cast<int>(xs_.size());
    watches_.clear();
    watched_.assign(xs_.size(), 0);
    pos_a_.resize(xs_.size());
    for (int j = 0; j < k; ++j) pos_a_[j] = st.pos_of(xs_[j], a_);
    const int need = k - c_;
    if (need <= 0) return true;
    int afree = 0;
    for (int j = 0; j < k; ++j)
      if (!a_present(st, j)) ++afree;
    if (afree >= need) return true;
    std::vector<int> cap;
    for (int j = 0; j < k; ++j)
      if (capable(st, j)) cap.push_back(j);
    if (static_cast<int>(cap.size()) > need) {
      for (int n = 0; n <= need; ++n) add_watch(e, cap[n]);
      return true;
    }
    if (static_cast<int>(cap.size()) == need) {
      for (int j : cap)
        if (a_present(st, j) && !e.remove_value(xs_[j], pos_a_[j]))
          return false;
      return true;
    }
    return false;
  }

  bool run(Engine& e) override {
    DomainStore& st = e.store();
    const int k = static_cast<int>(xs_.size());
    std::vector<std::size_t> stale;
    for (std::size_t w = 0; w < watches_.size(); ++w)
      if (!st.present(xs_[watches_[w].spos], watches_[w].dpos)) stale.push_back(w);
    if (stale.empty()) return true;
    std::vector<std::size_t> unmoved;
    for (std::size_t w : stale) {
      Watch& wt = watches_[w];
      int np = non_a_pos(st, wt.spos);
      if (np >= 0) {
        move_watch(e, wt, wt.spos, np);
        continue;
      }
      int found = -1;
      for (int step = 1; step < k; ++step) {
        int j = (wt.spos + step) % k;
        if (watched_[j]) continue;
        if (capable(st, j)) {
          found = j;
          break;
        }
      }
      if (found >= 0) {
        watched_[wt.spos] = 0;
        watched_[found] = 1;
        move_watch(e, wt, found, non_a_pos(st, found));
      } else {
        unmoved.push_back(w);
      }
    }
    if (unmoved.empty()) return true;
    int valid = 0;
    for (const Watch& wt : watches_)
      if (st.present(xs_[wt.spos], wt.dpos)) ++valid;
    if (valid == k - c_) {
      for (const Watch& wt : watches_) {
        if (!st.present(xs_[wt.spos], wt.dpos)) continue;
        if (a_present(st, wt.spos) &&
            !e.remove_value(xs_[wt.spos], pos_a_[wt.spos]))
          return false;
      }
      return true;
    }
    return false;
  }

 private:
  struct Watch {
    int spos;
    int dpos;
    int pid;
  };

  bool a_present(const DomainStore& st, int j) const {
    return pos_a_[j] >= 0 && st.present(xs_[j], pos_a_[j]);
  }
  bool capable(const DomainStore& st, int j) const {
    return st.live(xs_[j]) > (a_present(st, j) ? 1 : 0);
  }
  int non_a_pos(const DomainStore& st, int j) const {
    for (int p = 0; p < st.value_count(xs_[j]); ++p)
      if (p != pos_a_[j] && st.present(xs_[j], p)) return p;
    return -1;
  }
  void add_watch(Engine& e, int j) {
    int np = non_a_pos(e.store(), j);
    int pid = e.place_trigger(TriggerKind::kWatchedLiteral, xs_[j], np, *this);
    watches_.push_back({j, np, pid});
    watched_[j] = 1;
  }
  void move_watch(Engine& e, Watch& wt, int j, int np) {
    e.triggers().unplace(wt.pid, e.level());
    wt.spos = j;
    wt.dpos = np;
    wt.pid = e.place_trigger(TriggerKind::kWatchedLiteral, xs_[j], np, *this);
  }

  std::vector<int> xs_;
  int a_, c_;
  std::vector<int> pos_a_;
  std::vector<Watch> watches_;
  std::vector<std::uint8_t> watched_;
};

// Watched at-least: c+1 watches on literals carrying the value itself. No
// in-place repair exists; when only c capable indices remain they are pinned
// to the value.
class OccGeqWatchedProp final : public Propagator {
 public:
  OccGeqWatchedProp(std::string id, std::vector<int> xs, int a, int c)
      : Propagator(std::move(id)), xs_(std::move(xs)), a_(a), c_(c) {}

  void reset() override {
    watches_.clear();
    watched_.clear();
    pos_a_.clear();
  }

  bool init(Engine& e) override {
    DomainStore& st = e.store();
    const int k = static_cast<int>(xs_.size());
    watches_.clear();
    watched_.assign(xs_.size(), 0);
    pos_a_.resize(xs_.size());
    for (int j = 0; j < k; ++j) pos_a_[j] = st.pos_of(xs_[j], a_);
    if (c_ <= 0) return true;
    int forced = 0;
    for (int j = 0; j < k; ++j)
      if (st.live(xs_[j]) == 1 && a_present(st, j)) ++forced;
    if (forced >= c_) return true;
    std::vector<int> cap;
    for (int j = 0; j < k; ++j)
      if (a_present(st, j)) cap.push_back(j);
    if (static_cast<int>(cap.size()) > c_) {
      for (int n = 0; n <= c_; ++n) add_watch(e, cap[n]);
      return true;
    }
    if (static_cast<int>(cap.size()) == c_) {
      for (int j : cap)
        if (!pin_to_a(e, j)) return false;
      return true;
    }
    return false;
  }

  bool run(Engine& e) override {
    DomainStore& st = e.store();
    const int k = static_cast<int>(xs_.size());
    std::vector<std::size_t> stale;
    for (std::size_t w = 0; w < watches_.size(); ++w)
      if (!st.present(xs_[watches_[w].spos], watches_[w].dpos)) stale.push_back(w);
    if (stale.empty()) return true;
    std::vector<std::size_t> unmoved;
    for (std::size_t w : stale) {
      Watch& wt = watches_[w];
      int found = -1;
      for (int step = 1; step < k; ++step) {
        int j = (wt.spos + step) % k;
        if (watched_[j]) continue;
        if (a_present(st, j)) {
          found = j;
          break;
        }
      }
      if (found >= 0) {
        watched_[wt.spos] = 0;
        watched_[found] = 1;
        e.triggers().unplace(wt.pid, e.level());
        wt.spos = found;
        wt.dpos = pos_a_[found];
        wt.pid = e.place_trigger(TriggerKind::kWatchedLiteral, xs_[found],
                                 pos_a_[found], *this);
      } else {
        unmoved.push_back(w);
      }
    }
    if (unmoved.empty()) return true;
    int valid = 0;
    for (const Watch& wt : watches_)
      if (st.present(xs_[wt.spos], wt.dpos)) ++valid;
    if (valid == c_) {
      for (const Watch& wt : watches_) {
        if (!st.present(xs_[wt.spos], wt.dpos)) continue;
        if (!pin_to_a(e, wt.spos)) return false;
      }
      return true;
    }
    return false;
  }

 private:
  struct Watch {
    int spos;
    int dpos;
    int pid;
  };

  bool a_present(const DomainStore& st, int j) const {
    return pos_a_[j] >= 0 && st.present(xs_[j], pos_a_[j]);
  }
  bool pin_to_a(Engine& e, int j) {
    DomainStore& st = e.store();
    for (int p = 0; p < st.value_count(xs_[j]); ++p) {
      if (p == pos_a_[j] || !st.present(xs_[j], p)) continue;
      if (!e.remove_value(xs_[j], p)) return false;
    }
    return true;
  }
  void add_watch(Engine& e, int j) {
    int pid =
        e.place_trigger(TriggerKind::kWatchedLiteral, xs_[j], pos_a_[j], *this);
    watches_.push_back({j, pos_a_[j], pid});
    watched_[j] = 1;
  }

  std::vector<int> xs_;
  int a_, c_;
  std::vector<int> pos_a_;
  std::vector<Watch> watches_;
  std::vector<std::uint8_t> watched_;
};

// Assignment-triggered at-most: recomputes the occurrence bounds from
// scratch whenever any scope variable becomes assigned.
class OccLeqStaticProp final : public Propagator {
 public:
  OccLeqStaticProp(std::string id, std::vector<int> xs, int a, int c)
      : Propagator(std::move(id)), xs_(std::move(xs)), a_(a), c_(c) {}

  void reset() override { pos_a_.clear(); }

  bool init(Engine& e) override {
    DomainStore& st = e.store();
    pos_a_.resize(xs_.size());
    for (std::size_t j = 0; j < xs_.size(); ++j)
      pos_a_[j] = st.pos_of(xs_[j], a_);
    std::vector<int> distinct = xs_;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (int v : distinct)
      e.place_trigger(TriggerKind::kStaticAssignment, v, -1, *this);
    return check(e);
  }

  bool run(Engine& e) override { return check(e); }

 private:
  bool check(Engine& e) {
    DomainStore& st = e.store();
    const int k = static_cast<int>(xs_.size());
    const int need = k - c_;
    int cap = 0;
    for (int j = 0; j < k; ++j)
      if (capable(st, j)) ++cap;
    if (cap < need) return false;
    if (cap == need) {
      for (int j = 0; j < k; ++j)
        if (capable(st, j) && a_present(st, j) &&
            !e.remove_value(xs_[j], pos_a_[j]))
          return false;
    }
    return true;
  }
  bool a_present(const DomainStore& st, int j) const {
    return pos_a_[j] >= 0 && st.present(xs_[j], pos_a_[j]);
  }
  bool capable(const DomainStore& st, int j) const {
    return st.live(xs_[j]) > (a_present(st, j) ? 1 : 0);
  }

  std::vector<int> xs_;
  int a_, c_;
  std::vector<int> pos_a_;
};

class OccGeqStaticProp final : public Propagator {
 public:
  OccGeqStaticProp(std::string id, std::vector<int> xs, int a, int c)
      : Propagator(std::move(id)), xs_(std::move(xs)), a_(a), c_(c) {}

  void reset() override { pos_a_.clear(); }

  bool init(Engine& e) override {
    DomainStore& st = e.store();
    pos_a_.resize(xs_.size());
    for (std::size_t j = 0; j < xs_.size(); ++j)
      pos_a_[j] = st.pos_of(xs_[j], a_);
    std::vector<int> distinct = xs_;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (int v : distinct)
      e.place_trigger(TriggerKind::kStaticAssignment, v, -1, *this);
    return check(e);
  }

  bool run(Engine& e) override { return check(e); }

 private:
  bool check(Engine& e) {
    DomainStore& st = e.store();
    const int k = static_cast<int>(xs_.size());
    int cap = 0;
    for (int j = 0; j < k; ++j)
      if (a_present(st, j)) ++cap;
    if (cap < c_) return false;
    if (cap == c_) {
      for (int j = 0; j < k; ++j) {
        if (!a_present(st, j)) continue;
        for (int p = 0; p < st.value_count(xs_[j]); ++p) {
          if (p == pos_a_[j] || !st.present(xs_[j], p)) continue;
          if (!e.remove_value(xs_[j], p)) return false;
        }
      }
    }
    return true;
  }
  bool a_present(const DomainStore& st, int j) const {
    return pos_a_[j] >= 0 && st.present(xs_[j], pos_a_[j]);
  }

  std::vector<int> xs_;
  int a_, c_;
  std::vector<int> pos_a_;
};

class DiseqProp final : public Propagator {
 public:
  DiseqProp(std::string id, int x, int y)
      : Propagator(std::move(id)), x_(x), y_(y) {}

  bool init(Engine& e) override {
    if (x_ == y_) return false;  // coherent pairs can never differ
    e.place_trigger(TriggerKind::kStaticAssignment, x_, -1, *this);
    e.place_trigger(TriggerKind::kStaticAssignment, y_, -1, *this);
    return check(e);
  }

  bool run(Engine& e) override { return check(e); }

 private:
  bool check(Engine& e) {
    DomainStore& st = e.store();
    if (st.assigned(x_)) {
      int p = st.pos_of(y_, st.sole_value(x_));
      if (p >= 0 && st.present(y_, p) && !e.remove_value(y_, p)) return false;
    }
    if (st.assigned(y_)) {
      int p = st.pos_of(x_, st.sole_value(y_));
      if (p >= 0 && st.present(x_, p) && !e.remove_value(x_, p)) return false;
    }
    return true;
  }

  int x_, y_;
};

}  // namespace

Engine::Engine(const Instance& inst, OccMode mode)
    : inst_(&inst),
      store_([&] {
        std::vector<std::vector<int>> vals;
        vals.reserve(inst.vars.size());
        for (const VarDecl& v : inst.vars) vals.push_back(v.domain.values());
        return vals;
      }()),
      triggers_([&] {
        std::vector<int> sizes;
        sizes.reserve(inst.vars.size());
        for (const VarDecl& v : inst.vars)
          sizes.push_back(static_cast<int>(v.domain.size()));
        return sizes;
      }()) {
  names_.reserve(inst.vars.size());
  for (std::size_t i = 0; i < inst.vars.size(); ++i) {
    names_.push_back(inst.vars[i].id);
    if (!index_.emplace(inst.vars[i].id, static_cast<int>(i)).second)
      throw error("duplicate variable: " + inst.vars[i].id.name);
  }
  for (const ConstraintDecl& c : inst.constraints) {
    std::vector<int> scope;
    for (const VarId& v : scope_of(c.spec)) scope.push_back(var_of(v));
    scope_idx_.push_back(std::move(scope));
  }
  build_propagators(mode);
}

int Engine::var_of(const VarId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw error("unknown variable: " + v.name);
  return it->second;
}

void Engine::build_propagators(OccMode mode) {
  auto resolve = [&](const Schema& xs) {
    std::vector<int> out;
    out.reserve(xs.size());
    for (const VarId& v : xs) out.push_back(var_of(v));
    return out;
  };
  for (std::size_t ci = 0; ci < inst_->constraints.size(); ++ci) {
    const ConstraintSpec& spec = inst_->constraints[ci].spec;
    std::string tag = "[" + std::to_string(ci) + "]";
    if (const auto* el = std::get_if<ElementSpec>(&spec)) {
      std::vector<int> xs = resolve(el->xs);
      int y = var_of(el->y), z = var_of(el->z);
      props_.push_back(
          std::make_unique<ElementP1Prop>("element_p1" + tag, xs, y, z));
      props_.push_back(
          std::make_unique<ElementP2Prop>("element_p2" + tag, xs, y, z));
      props_.push_back(
          std::make_unique<ElementP3Prop>("element_p3" + tag, xs, y, z));
    } else if (const auto* leq = std::get_if<OccurrenceLeqSpec>(&spec)) {
      std::vector<int> xs = resolve(leq->xs);
      if (mode == OccMode::kWatched)
        props_.push_back(std::make_unique<OccLeqWatchedProp>(
            "occurrenceleq" + tag, xs, leq->value, leq->count));
      else
        props_.push_back(std::make_unique<OccLeqStaticProp>(
            "occurrenceleq" + tag, xs, leq->value, leq->count));
    } else if (const auto* geq = std::get_if<OccurrenceGeqSpec>(&spec)) {
      std::vector<int> xs = resolve(geq->xs);
      if (mode == OccMode::kWatched)
        props_.push_back(std::make_unique<OccGeqWatchedProp>(
            "occurrencegeq" + tag, xs, geq->value, geq->count));
      else
        props_.push_back(std::make_unique<OccGeqStaticProp>(
            "occurrencegeq" + tag, xs, geq->value, geq->count));
    } else if (const auto* dq = std::get_if<DiseqSpec>(&spec)) {
      props_.push_back(std::make_unique<DiseqProp>("diseq" + tag,
                                                   var_of(dq->x),
                                                   var_of(dq->y)));
    }
    // Table constraints have no propagator; they are checked at leaves.
  }
  for (std::size_t i = 0; i < props_.size(); ++i)
    props_[i]->idx_ = static_cast<int>(i);
}

void Engine::reset_domains(std::vector<std::vector<int>> values_per_var) {
  if (values_per_var.size() != names_.size())
    throw error("reset_domains: variable count mismatch");
  std::vector<int> sizes;
  sizes.reserve(values_per_var.size());
  for (const auto& vals : values_per_var)
    sizes.push_back(static_cast<int>(vals.size()));
  store_.reset(std::move(values_per_var));
  triggers_.reset(std::move(sizes));
  for (auto& p : props_) {
    p->reset();
    p->calls_ = 0;
    p->in_queue_ = false;
    p->inited_ = false;
    p->pending_.clear();
  }
  queue_.clear();
  failed_ = false;
  level_ = 0;
}

void Engine::wake(int prop, int var, int pos) {
  Propagator& p = *props_[prop];
  if (!p.inited_) return;  // not yet established; init will read current state
  p.pending_.emplace_back(var, pos);
  if (!p.in_queue_) {
    p.in_queue_ = true;
    queue_.push_back(prop);
  }
}

bool Engine::remove_value(int var, int pos) {
  if (failed_) return false;
  DomainStore::Removal r = store_.remove(var, pos);
  if (!r.removed) return true;
  if (r.emptied) {
    failed_ = true;  // emptiness is detected centrally, not by propagators
    return false;
  }
  for (int prop : triggers_.on_remove(var, pos, r.assigned))
    wake(prop, var, pos);
  return true;
}

int Engine::place_trigger(TriggerKind kind, int var, int pos, Propagator& p) {
  if (kind != TriggerKind::kStaticAssignment &&
      (pos < 0 || !store_.present(var, pos)))
    throw error("trigger placed on a removed literal");
  return triggers_.place(kind, var, pos, p.idx_, level_);
}

void Engine::replace_dynamic_support(
    Propagator& p, const std::vector<std::pair<int, int>>& literals) {
  triggers_.unplace_literals_of(p.idx_, level_);
  std::vector<std::pair<int, int>> placed;
  for (const auto& lit : literals) {
    if (std::find(placed.begin(), placed.end(), lit) != placed.end()) continue;
    placed.push_back(lit);
    place_trigger(TriggerKind::kDynamicLiteral, lit.first, lit.second, p);
  }
}

bool Engine::drain() {
  while (!failed_ && !queue_.empty()) {
    int idx = queue_.front();
    queue_.pop_front();
    Propagator& p = *props_[idx];
    p.in_queue_ = false;
    ++p.calls_;
    bool ok = p.run(*this);
    p.pending_.clear();
    if (!ok) failed_ = true;
  }
  if (failed_) {
    for (int idx : queue_) {
      props_[idx]->in_queue_ = false;
      props_[idx]->pending_.clear();
    }
    queue_.clear();
    return false;
  }
  return true;
}

bool Engine::propagate_root() {
  if (failed_) return false;
  for (auto& up : props_) {
    Propagator& p = *up;
    p.inited_ = true;
    ++p.calls_;
    if (!p.init(*this)) failed_ = true;
    if (!drain()) break;
  }
  return !failed_;
}

void Engine::push_level() {
  store_.push_mark();
  ++level_;
}

void Engine::pop_level() {
  store_.pop_mark();
  --level_;
  triggers_.backtrack_to(level_);
  failed_ = false;
}

bool Engine::assign_and_propagate(int var, int pos) {
  std::vector<int> drop;
  for (int p = 0; p < store_.value_count(var); ++p)
    if (p != pos && store_.present(var, p)) drop.push_back(p);
  for (int p : drop)
    if (!remove_value(var, p)) break;  // latched; drain clears the queue
  return drain();
}

bool Engine::remove_and_propagate(int var, int pos) {
  remove_value(var, pos);
  return drain();
}

std::map<std::string, std::uint64_t> Engine::call_counts() const {
  std::map<std::string, std::uint64_t> out;
  for (const auto& p : props_) out[p->id()] = p->calls();
  return out;
}

std::optional<Signature> propagate_to_fixpoint(const Instance& inst,
                                               const Signature& start,
                                               OccMode mode) {
  Engine eng(inst, mode);
  std::vector<std::vector<int>> vals;
  vals.reserve(inst.vars.size());
  for (const VarDecl& v : inst.vars) vals.push_back(start.at(v.id).values());
  eng.reset_domains(std::move(vals));
  if (!eng.propagate_root()) return std::nullopt;
  return eng.current_signature();
}

}  // namespace gensup
