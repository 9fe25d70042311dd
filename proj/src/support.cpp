#include "gensup/support.hpp"

#include <algorithm>

namespace gensup {

SupportElement SupportElement::full_tuple(Tuple t) {
  SupportElement e;
  e.literal_ = false;
  e.tuple_ = std::move(t);
  return e;
}

SupportElement SupportElement::literal(std::size_t col, int value) {
  SupportElement e;
  e.literal_ = true;
  e.col_ = col;
  e.value_ = value;
  return e;
}

bool SupportElement::valid(const Schema& scope, const Signature& sig) const {
  if (literal_) {
    if (col_ >= scope.size()) return false;
    return sig.at(scope[col_]).contains(value_);
  }
  return is_x_tuple(scope, sig, tuple_);
}

SupportSet::SupportSet(std::vector<SupportElement> elems)
    : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

SupportSet SupportSet::literals(
    std::initializer_list<std::pair<std::size_t, int>> lits) {
  std::vector<SupportElement> es;
  es.reserve(lits.size());
  for (const auto& [c, v] : lits) es.push_back(SupportElement::literal(c, v));
  return SupportSet(std::move(es));
}

SupportSet SupportSet::of_tuples(std::initializer_list<Tuple> ts) {
  std::vector<SupportElement> es;
  es.reserve(ts.size());
  for (const Tuple& t : ts) es.push_back(SupportElement::full_tuple(t));
  return SupportSet(std::move(es));
}

bool SupportSet::contains(const SupportElement& e) const {
  return std::binary_search(elems_.begin(), elems_.end(), e);
}

bool SupportSet::contains_literal(std::size_t col, int value) const {
  for (const SupportElement& e : elems_)
    if (e.is_literal() && e.col() == col && e.value() == value) return true;
  return false;
}

bool SupportSet::valid(const Schema& scope, const Signature& sig) const {
  for (const SupportElement& e : elems_)
    if (!e.valid(scope, sig)) return false;
  return true;
}

bool SupportSet::subset_of(const SupportSet& other) const {
  return std::includes(other.elems_.begin(), other.elems_.end(),
                       elems_.begin(), elems_.end());
}

void SupportSet::insert(SupportElement e) {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
  if (it == elems_.end() || !(*it == e)) elems_.insert(it, std::move(e));
}

bool holds(const SupportProperty& p, const Signature& sig,
           const SupportSet& s) {
  if (!sig.covers(p.scope))
    throw error("property scope not covered by signature: " + p.name);
  return p.eval(sig, s);
}

std::vector<SupportElement> tuple_universe(const Schema& scope,
                                           const Signature& sig,
                                           std::size_t bound) {
  std::vector<SupportElement> out;
  for (Tuple& t : tuples_of(scope, sig, bound))
    out.push_back(SupportElement::full_tuple(std::move(t)));
  return out;
}

std::vector<SupportElement> literal_universe(const Schema& scope,
                                             const Signature& sig) {
  std::vector<SupportElement> out;
  for (std::size_t i = 0; i < scope.size(); ++i)
    for (int v : sig.at(scope[i]).values())
      out.push_back(SupportElement::literal(i, v));
  return out;
}

std::vector<SupportElement> universe_for(const SupportProperty& p,
                                         const Signature& sig,
                                         std::size_t bound) {
  return p.universe == UniverseKind::kTuples
             ? tuple_universe(p.scope, sig, bound)
             : literal_universe(p.scope, sig);
}

namespace {

SupportSet materialize_mask(const std::vector<SupportElement>& universe,
                            std::uint32_t mask) {
  std::vector<SupportElement> es;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (mask & (1u << i)) es.push_back(universe[i]);
  return SupportSet(std::move(es));
}

std::uint32_t validity_mask(const std::vector<SupportElement>& universe,
                            const Schema& scope, const Signature& sig) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (universe[i].valid(scope, sig)) m |= (1u << i);
  return m;
}

void check_universe_bound(const std::vector<SupportElement>& universe) {
  if (universe.size() > kMaxUniverse)
    throw enumeration_limit_error("support universe exceeds bound");
}

}  // namespace

std::vector<SupportSet> support_sets(
    const SupportProperty& p, const Signature& sig,
    const std::vector<SupportElement>& universe) {
  check_universe_bound(universe);
  std::uint32_t vmask = validity_mask(universe, p.scope, sig);
  std::vector<std::uint32_t> found;
  std::vector<SupportSet> out;
  // Subsets in ascending cardinality; supersets of an accepted minimal set
  // are skipped.
  std::vector<std::uint32_t> valid_subsets;
  for (std::uint32_t m = vmask;; m = (m - 1) & vmask) {
    valid_subsets.push_back(m);
    if (m == 0) break;
  }
  std::sort(valid_subsets.begin(), valid_subsets.end(),
            [](std::uint32_t a, std::uint32_t b) {
              int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
              return pa != pb ? pa < pb : a < b;
            });
  for (std::uint32_t m : valid_subsets) {
    bool dominated = false;
    for (std::uint32_t f : found)
      if ((f & m) == f) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    SupportSet s = materialize_mask(universe, m);
    if (holds(p, sig, s)) {
      found.push_back(m);
      out.push_back(std::move(s));
    }
  }
  return out;
}

bool support_exists(const SupportProperty& p, const Signature& sig,
                    const std::vector<SupportElement>& universe) {
  check_universe_bound(universe);
  std::uint32_t vmask = validity_mask(universe, p.scope, sig);
  for (std::uint32_t m = vmask;; m = (m - 1) & vmask) {
    if (holds(p, sig, materialize_mask(universe, m))) return true;
    if (m == 0) return false;
  }
}

bool collection_supported(const std::vector<SupportProperty>& props,
                          const Signature& sig,
                          const std::vector<SupportElement>& universe) {
  for (const SupportProperty& p : props)
    if (!support_exists(p, sig, universe)) return false;
  return true;
}

SupportProperty combine(const SupportProperty& p, const SupportProperty& q,
                        Combine op) {
  if (!(p.scope == q.scope)) throw error("combine: property scope mismatch");
  SupportProperty out;
  out.scope = p.scope;
  out.universe = p.universe;
  if (op == Combine::kAnd) {
    out.name = "(" + p.name + " and " + q.name + ")";
    out.eval = [pe = p.eval, qe = q.eval](const Signature& sig,
                                          const SupportSet& s) {
      return pe(sig, s) && qe(sig, s);
    };
  } else {
    out.name = "(" + p.name + " or " + q.name + ")";
    out.eval = [pe = p.eval, qe = q.eval](const Signature& sig,
                                          const SupportSet& s) {
      return pe(sig, s) || qe(sig, s);
    };
  }
  return out;
}

SupportProperty true_property(Schema scope) {
  return SupportProperty{"true", std::move(scope), UniverseKind::kTuples,
                         [](const Signature&, const SupportSet&) {
                           return true;
                         }};
}

SupportProperty false_property(Schema scope) {
  return SupportProperty{"false", std::move(scope), UniverseKind::kTuples,
                         [](const Signature&, const SupportSet&) {
                           return false;
                         }};
}

SupportProperty literal_property(Schema scope, std::size_t col, int value) {
  SupportProperty p;
  p.name = "lit(" + std::to_string(col) + "=" + std::to_string(value) + ")";
  p.scope = std::move(scope);
  p.universe = UniverseKind::kTuples;
  p.eval = [col, value](const Signature&, const SupportSet& s) {
    for (const SupportElement& e : s.elements()) {
      if (e.is_literal() && e.col() == col && e.value() == value) return true;
      if (e.is_tuple() && col < e.tuple().size() && e.tuple()[col] == value)
        return true;
    }
    return false;
  };
  return p;
}

SupportProperty min_anchored_sum_property(Schema scope, int threshold) {
  SupportProperty p;
  p.name = "min-anchored-sum>=" + std::to_string(threshold);
  VarId anchor = scope[0];
  p.scope = std::move(scope);
  p.universe = UniverseKind::kTuples;
  p.eval = [anchor, threshold](const Signature& sig, const SupportSet& s) {
    const Domain& d = sig.at(anchor);
    if (d.empty()) return false;
    int lo = d.min();
    for (const SupportElement& e : s.elements()) {
      if (!e.is_tuple()) continue;
      const Tuple& t = e.tuple();
      int sum = 0;
      for (int v : t) sum += v;
      if (sum >= threshold && !t.empty() && t[0] == lo) return true;
    }
    return false;
  };
  return p;
}

SupportProperty missing_value_mirror_property(Schema scope,
                                              std::size_t lit_col,
                                              std::size_t watch_col,
                                              Domain full) {
  SupportProperty p;
  p.name = "missing-value-mirror";
  VarId watched = scope[watch_col];
  p.scope = std::move(scope);
  p.universe = UniverseKind::kLiterals;
  p.eval = [lit_col, watched, full](const Signature& sig,
                                    const SupportSet& s) {
    const Domain& cur = sig.at(watched);
    for (int v : full.values())
      if (!cur.contains(v) && !s.contains_literal(lit_col, v)) return false;
    return true;
  };
  return p;
}

SignatureLattice::SignatureLattice(std::vector<VarId> vars,
                                   std::vector<Domain> base)
    : vars_(std::move(vars)), base_(std::move(base)) {
  if (vars_.size() != base_.size())
    throw error("lattice variable/domain count mismatch");
  offset_.resize(vars_.size());
  int off = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    offset_[i] = off;
    off += static_cast<int>(base_[i].size());
  }
  total_bits_ = off;
  if (total_bits_ > 62) throw enumeration_limit_error("lattice too large");
}

SignatureLattice SignatureLattice::over(const Schema& scope,
                                        const Signature& base) {
  std::vector<VarId> vars = scope.distinct_vars();
  std::vector<Domain> doms;
  doms.reserve(vars.size());
  for (const VarId& v : vars) doms.push_back(base.at(v));
  return SignatureLattice(std::move(vars), std::move(doms));
}

SignatureLattice::Code SignatureLattice::top() const {
  return total_bits_ == 62 ? (Code{1} << 62) - 1
                           : (Code{1} << total_bits_) - 1;
}

bool SignatureLattice::nonempty(Code c) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    Code field = (c >> offset_[i]) & ((Code{1} << base_[i].size()) - 1);
    if (field == 0) return false;
  }
  return true;
}

bool SignatureLattice::singleton(Code c) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    Code field = (c >> offset_[i]) & ((Code{1} << base_[i].size()) - 1);
    if (__builtin_popcountll(field) != 1) return false;
  }
  return true;
}

Signature SignatureLattice::decode(Code c) const {
  Signature sig;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    std::vector<int> vals;
    const std::vector<int>& base_vals = base_[i].values();
    for (std::size_t b = 0; b < base_vals.size(); ++b)
      if (c & (Code{1} << (offset_[i] + b))) vals.push_back(base_vals[b]);
    sig.set(vars_[i], Domain::of(std::move(vals)));
  }
  return sig;
}

SignatureLattice::Code SignatureLattice::encode(const Signature& sig) const {
  Code c = 0;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const std::vector<int>& base_vals = base_[i].values();
    for (int v : sig.at(vars_[i]).values()) {
      auto it = std::lower_bound(base_vals.begin(), base_vals.end(), v);
      if (it == base_vals.end() || *it != v)
        throw error("signature value outside lattice base");
      c |= Code{1} << (offset_[i] + (it - base_vals.begin()));
    }
  }
  return c;
}

std::vector<SignatureLattice::Code> SignatureLattice::down_set(
    Code from, bool include_empty) const {
  std::vector<Code> out;
  for (Code m = from;; m = (m - 1) & from) {
    if (include_empty || nonempty(m)) out.push_back(m);
    if (m == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignatureLattice::Code> SignatureLattice::all(
    bool include_empty) const {
  return down_set(top(), include_empty);
}

std::vector<SignatureLattice::Code> SignatureLattice::interval(Code lo,
                                                               Code hi) const {
  if (!leq(lo, hi)) return {};
  Code varying = hi & ~lo;
  std::vector<Code> out;
  for (Code m = varying;; m = (m - 1) & varying) {
    out.push_back(lo | m);
    if (m == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

PropertyTable::PropertyTable(const SupportProperty& p,
                             const SignatureLattice& lattice,
                             std::vector<SupportElement> universe)
    : lattice_(&lattice), universe_(std::move(universe)) {
  if (universe_.size() > 14)
    throw enumeration_limit_error("property table universe too large");
  if (lattice.total_bits() > 16)
    throw enumeration_limit_error("property table lattice too large");
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()),
                  universe_.end());
  const std::size_t nmasks = std::size_t{1} << universe_.size();
  const std::size_t ncodes = std::size_t{1} << lattice.total_bits();
  sets_.reserve(nmasks);
  for (std::size_t m = 0; m < nmasks; ++m)
    sets_.push_back(materialize_mask(universe_, static_cast<Mask>(m)));
  sat_.resize(ncodes);
  vmask_.resize(ncodes);
  minimal_.resize(ncodes);
  for (std::size_t c = 0; c < ncodes; ++c) {
    Signature sig = lattice.decode(c);
    vmask_[c] = validity_mask(universe_, p.scope, sig);
    auto& row = sat_[c];
    row.resize(nmasks);
    for (std::size_t m = 0; m < nmasks; ++m) row[m] = p.eval(sig, sets_[m]);
    // Minimal satisfying valid subsets, ascending cardinality.
    std::vector<Mask> subs;
    for (Mask m = vmask_[c];; m = (m - 1) & vmask_[c]) {
      subs.push_back(m);
      if (m == 0) break;
    }
    std::sort(subs.begin(), subs.end(), [](Mask a, Mask b) {
      int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    std::vector<Mask> mins;
    for (Mask m : subs) {
      if (!row[m]) continue;
      bool dominated = false;
      for (Mask f : mins)
        if ((f & m) == f) {
          dominated = true;
          break;
        }
      if (!dominated) mins.push_back(m);
    }
    std::sort(mins.begin(), mins.end());
    minimal_[c] = std::move(mins);
  }
}

PropertyTable::Mask PropertyTable::mask_of(const SupportSet& s) const {
  Mask m = 0;
  for (const SupportElement& e : s.elements()) {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), e);
    if (it == universe_.end() || !(*it == e))
      throw error("support element outside the table universe");
    m |= Mask{1} << (it - universe_.begin());
  }
  return m;
}

StabilityCheck p_admissible_check(
    const SupportProperty& p, const Signature& top,
    const std::vector<SupportElement>& universe) {
  SignatureLattice lat = SignatureLattice::over(p.scope, top);
  PropertyTable table(p, lat, universe);
  StabilityCheck result;
  const auto codes = lat.all(/*include_empty=*/true);
  for (auto c : codes) {
    PropertyTable::Mask vm = table.valid_mask(c);
    // Satisfying valid subsets at the wider signature.
    std::vector<PropertyTable::Mask> sats;
    for (PropertyTable::Mask m = vm;; m = (m - 1) & vm) {
      if (table.sat(c, m)) sats.push_back(m);
      if (m == 0) break;
    }
    std::sort(sats.begin(), sats.end());
    for (auto c1 : lat.down_set(c, /*include_empty=*/true)) {
      PropertyTable::Mask vm1 = table.valid_mask(c1);
      for (auto m : sats) {
        ++result.triples_scanned;
        if ((m & vm1) != m) continue;  // some element no longer valid
        if (!table.sat(c1, m)) {
          result.counterexample = StabilityCounterexample{
              lat.decode(c), lat.decode(c1), table.materialize(m)};
          return result;
        }
      }
    }
  }
  return result;
}

StabilityCheck backtrack_stable_check(
    const SupportProperty& p, const Signature& top,
    const std::vector<SupportElement>& universe) {
  SignatureLattice lat = SignatureLattice::over(p.scope, top);
  PropertyTable table(p, lat, universe);
  StabilityCheck result;
  const std::size_t nmasks = std::size_t{1} << table.universe_size();
  const auto codes = lat.all(/*include_empty=*/true);
  for (auto c : codes) {
    for (auto c1 : lat.down_set(c, /*include_empty=*/true)) {
      for (std::size_t m = 1; m < nmasks; ++m) {
        ++result.triples_scanned;
        auto mask = static_cast<PropertyTable::Mask>(m);
        if (table.sat(c1, mask) && !table.sat(c, mask)) {
          result.counterexample = StabilityCounterexample{
              lat.decode(c), lat.decode(c1), table.materialize(mask)};
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace gensup
