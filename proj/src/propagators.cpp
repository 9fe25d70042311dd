#include "gensup/propagators.hpp"

#include <algorithm>

namespace gensup {

namespace {

bool index_in_range(int i, std::size_t k) {
  return i >= 0 && static_cast<std::size_t>(i) < k;
}

}  // namespace

PropagatorOutcome element_p1(const ElementSpec& spec, const Signature& sig,
                             const SupportSet& lost) {
  (void)lost;  // the reconstruction never re-uses the old support
  const Domain& dy = sig.at(spec.y);
  if (dy.empty()) throw error("element_p1: empty index domain");
  if (dy.size() > 1) {
    SupportSet s = SupportSet::literals(
        {{spec.y_col(), dy.min()}, {spec.y_col(), dy.max()}});
    return PropagatorOutcome::new_support(sig, std::move(s));
  }
  int i = dy.min();
  if (!index_in_range(i, spec.xs.size())) return PropagatorOutcome::no_support();
  const VarId& xi = spec.xs[static_cast<std::size_t>(i)];
  Domain inter = sig.at(xi).intersect(sig.at(spec.z));
  if (inter.empty()) return PropagatorOutcome::no_support();
  Signature narrowed = sig;
  narrowed.set(xi, inter);
  SupportSet s;
  for (int b : inter.values()) s.insert(SupportElement::literal(spec.z_col(), b));
  return PropagatorOutcome::new_support(std::move(narrowed), std::move(s));
}

PropagatorOutcome element_p2(const ElementSpec& spec, const Signature& sig) {
  const Domain& dy = sig.at(spec.y);
  const Domain& dz = sig.at(spec.z);
  std::vector<int> keep;
  SupportSet s;
  for (int i : dy.values()) {
    if (!index_in_range(i, spec.xs.size())) continue;
    const VarId& xi = spec.xs[static_cast<std::size_t>(i)];
    Domain inter = sig.at(xi).intersect(dz);
    if (inter.empty()) continue;
    keep.push_back(i);
    int a = inter.min();  // smallest witness, for determinism
    s.insert(SupportElement::literal(static_cast<std::size_t>(i), a));
    s.insert(SupportElement::literal(spec.z_col(), a));
  }
  if (keep.empty()) return PropagatorOutcome::no_support();
  Signature narrowed = sig;
  narrowed.set(spec.y, Domain::of(std::move(keep)));
  return PropagatorOutcome::new_support(std::move(narrowed), std::move(s));
}

PropagatorOutcome element_p3(const ElementSpec& spec, const Signature& sig) {
  const Domain& dy = sig.at(spec.y);
  const Domain& dz = sig.at(spec.z);
  std::vector<int> keep;
  SupportSet s;
  for (int a : dz.values()) {
    int witness = -1;
    for (int i : dy.values()) {
      if (!index_in_range(i, spec.xs.size())) continue;
      if (sig.at(spec.xs[static_cast<std::size_t>(i)]).contains(a)) {
        witness = i;
        break;
      }
    }
    if (witness < 0) continue;
    keep.push_back(a);
    s.insert(SupportElement::literal(static_cast<std::size_t>(witness), a));
    s.insert(SupportElement::literal(spec.y_col(), witness));
  }
  if (keep.empty()) return PropagatorOutcome::no_support();
  Signature narrowed = sig;
  narrowed.set(spec.z, Domain::of(std::move(keep)));
  return PropagatorOutcome::new_support(std::move(narrowed), std::move(s));
}

namespace {

// Shared shape of the two occurrence propagators. `wanted` tells whether an
// index can still contribute (has a non-a value for leq, has a itself for
// geq); `pick` chooses the literal value watched at a contributing index.

struct OccView {
  const Schema* xs;
  int a;
  int need;          // |X| - c for leq, c for geq
  bool wants_value;  // geq watches occurrences of a, leq watches non-a values
};

bool leq_capable(const Signature& sig, const VarId& v, int a) {
  const Domain& d = sig.at(v);
  return d.size() > (d.contains(a) ? 1u : 0u);
}

int leq_pick(const Signature& sig, const VarId& v, int a) {
  for (int b : sig.at(v).values())
    if (b != a) return b;
  throw error("occurrence: no replacement value");
}

bool geq_capable(const Signature& sig, const VarId& v, int a) {
  return sig.at(v).contains(a);
}

// Already satisfied without any support: enough indices can no longer (leq)
// or can only (geq) take the value.
bool leq_tautology(const OccView& o, const Signature& sig) {
  if (o.need <= 0) return true;
  int afree = 0;
  for (const VarId& v : *o.xs)
    if (!sig.at(v).contains(o.a)) ++afree;
  return afree >= o.need;
}

bool geq_tautology(const OccView& o, const Signature& sig) {
  if (o.need <= 0) return true;
  int forced = 0;
  for (const VarId& v : *o.xs) {
    const Domain& d = sig.at(v);
    if (!d.empty() && d.size() == 1 && d.contains(o.a)) ++forced;
  }
  return forced >= o.need;
}

template <typename Capable, typename Pick, typename Prune>
PropagatorOutcome occurrence_step(const OccView& o, const Signature& sig,
                                  const SupportSet& lost, Capable capable,
                                  Pick pick, Prune prune) {
  const std::size_t k = o.xs->size();
  if (o.need > static_cast<int>(k)) return PropagatorOutcome::no_support();
  // I1: indices whose literal in the lost support is still usable. For leq a
  // usable literal carries a value other than a; for geq it carries a itself.
  std::vector<char> in_i1(k, 0);
  for (const SupportElement& e : lost.elements()) {
    if (!e.is_literal() || e.col() >= k) continue;
    bool relevant = o.wants_value ? e.value() == o.a : e.value() != o.a;
    if (relevant && e.valid(*o.xs, sig)) in_i1[e.col()] = 1;
  }
  std::vector<std::size_t> order;  // I1 first, then remaining indices ascending
  for (std::size_t i = 0; i < k; ++i)
    if (in_i1[i]) order.push_back(i);
  for (std::size_t i = 0; i < k; ++i)
    if (!in_i1[i] && capable(sig, (*o.xs)[i], o.a)) order.push_back(i);
  int i3 = static_cast<int>(order.size());
  if (i3 > o.need) {
    SupportSet s;
    int take = o.need + 1;
    for (int n = 0; n < take; ++n) {
      std::size_t i = order[static_cast<std::size_t>(n)];
      s.insert(SupportElement::literal(i, pick(sig, (*o.xs)[i], o.a)));
    }
    return PropagatorOutcome::new_support(sig, std::move(s));
  }
  if (i3 == o.need) {
    Signature narrowed = sig;
    for (std::size_t i : order) prune(narrowed, (*o.xs)[i], o.a);
    return PropagatorOutcome::new_support(std::move(narrowed), SupportSet{});
  }
  return PropagatorOutcome::no_support();
}

}  // namespace

PropagatorOutcome occurrence_leq(const OccurrenceLeqSpec& spec,
                                 const Signature& sig,
                                 const SupportSet& lost) {
  OccView o{&spec.xs, spec.value,
            static_cast<int>(spec.xs.size()) - spec.count, false};
  if (leq_tautology(o, sig))
    return PropagatorOutcome::new_support(sig, SupportSet{});
  return occurrence_step(
      o, sig, lost,
      [](const Signature& s, const VarId& v, int a) {
        return leq_capable(s, v, a);
      },
      [](const Signature& s, const VarId& v, int a) {
        return leq_pick(s, v, a);
      },
      [](Signature& s, const VarId& v, int a) {
        s.set(v, s.at(v).without(a));
      });
}

PropagatorOutcome occurrence_geq(const OccurrenceGeqSpec& spec,
                                 const Signature& sig,
                                 const SupportSet& lost) {
  OccView o{&spec.xs, spec.value, spec.count, true};
  if (geq_tautology(o, sig))
    return PropagatorOutcome::new_support(sig, SupportSet{});
  return occurrence_step(
      o, sig, lost,
      [](const Signature& s, const VarId& v, int a) {
        return geq_capable(s, v, a);
      },
      [](const Signature&, const VarId&, int a) { return a; },
      [](Signature& s, const VarId& v, int a) {
        (void)a;
        s.set(v, Domain{a});
      });
}

PropagatorOutcome diseq_step(const DiseqSpec& spec, const Signature& sig) {
  const Domain& dx = sig.at(spec.x);
  const Domain& dy = sig.at(spec.y);
  if (dx.empty() || dy.empty()) throw error("diseq: empty domain");
  Signature narrowed = sig;
  if (dx.size() == 1 && dy.size() == 1) {
    if (dx.min() == dy.min()) return PropagatorOutcome::no_support();
    return PropagatorOutcome::new_support(
        sig, SupportSet::literals({{0, dx.min()}, {1, dy.min()}}));
  }
  if (dx.size() == 1) {
    Domain ny = dy.without(dx.min());
    narrowed.set(spec.y, ny);
    return PropagatorOutcome::new_support(
        std::move(narrowed),
        SupportSet::literals({{0, dx.min()}, {1, ny.min()}}));
  }
  if (dy.size() == 1) {
    Domain nx = dx.without(dy.min());
    narrowed.set(spec.x, nx);
    return PropagatorOutcome::new_support(
        std::move(narrowed),
        SupportSet::literals({{0, nx.min()}, {1, dy.min()}}));
  }
  int a = dx.min();
  int b = dy.min() != a ? dy.min() : dy.values()[1];
  return PropagatorOutcome::new_support(sig,
                                        SupportSet::literals({{0, a}, {1, b}}));
}

SupportProperty element_p1_property(const ElementSpec& spec) {
  SupportProperty p;
  p.name = "element_p1";
  p.scope = spec.scope();
  p.universe = UniverseKind::kLiterals;
  std::size_t k = spec.xs.size();
  std::size_t ycol = spec.y_col(), zcol = spec.z_col();
  VarId y = spec.y;
  Schema xs = spec.xs;
  p.eval = [k, ycol, zcol, y, xs](const Signature& sig, const SupportSet& s) {
    const Domain& dy = sig.at(y);
    // Two distinct index literals witness a non-singleton index domain.
    const auto& vals = dy.values();
    for (std::size_t i = 0; i < vals.size(); ++i)
      for (std::size_t j = i + 1; j < vals.size(); ++j)
        if (s.contains_literal(ycol, vals[i]) &&
            s.contains_literal(ycol, vals[j]))
          return true;
    // Otherwise every reachable vector value must be mirrored on z.
    // Out-of-range index values admit no support.
    for (int i : vals) {
      if (!index_in_range(i, k)) return false;
      for (int a : sig.at(xs[static_cast<std::size_t>(i)]).values())
        if (!s.contains_literal(zcol, a)) return false;
    }
    return true;
  };
  return p;
}

SupportProperty element_p2_property(const ElementSpec& spec) {
  SupportProperty p;
  p.name = "element_p2";
  p.scope = spec.scope();
  p.universe = UniverseKind::kLiterals;
  std::size_t k = spec.xs.size();
  std::size_t zcol = spec.z_col();
  VarId y = spec.y, z = spec.z;
  p.eval = [k, zcol, y, z](const Signature& sig, const SupportSet& s) {
    for (int i : sig.at(y).values()) {
      if (!index_in_range(i, k)) return false;
      bool witnessed = false;
      for (int a : sig.at(z).values())
        if (s.contains_literal(static_cast<std::size_t>(i), a) &&
            s.contains_literal(zcol, a)) {
          witnessed = true;
          break;
        }
      if (!witnessed) return false;
    }
    return true;
  };
  return p;
}

SupportProperty element_p3_property(const ElementSpec& spec) {
  SupportProperty p;
  p.name = "element_p3";
  p.scope = spec.scope();
  p.universe = UniverseKind::kLiterals;
  std::size_t k = spec.xs.size();
  std::size_t ycol = spec.y_col();
  VarId y = spec.y, z = spec.z;
  p.eval = [k, ycol, y, z](const Signature& sig, const SupportSet& s) {
    for (int a : sig.at(z).values()) {
      bool witnessed = false;
      for (int i : sig.at(y).values()) {
        if (!index_in_range(i, k)) continue;
        if (s.contains_literal(static_cast<std::size_t>(i), a) &&
            s.contains_literal(ycol, i)) {
          witnessed = true;
          break;
        }
      }
      if (!witnessed) return false;
    }
    return true;
  };
  return p;
}

namespace {

// Membership-count disjunct: some index set of exactly `size` indices whose
// members all satisfy a per-index condition. Sizes clamp at zero so counts
// outside [0, |X|] degrade to tautology or contradiction.
bool count_at_least(int have, int size, std::size_t k) {
  if (size <= 0) return true;
  if (size > static_cast<int>(k)) return false;
  return have >= size;
}

}  // namespace

SupportProperty occurrence_leq_property(const OccurrenceLeqSpec& spec) {
  SupportProperty p;
  p.name = "occurrence_leq";
  p.scope = spec.xs;
  p.universe = UniverseKind::kLiterals;
  Schema xs = spec.xs;
  int a = spec.value, c = spec.count;
  p.eval = [xs, a, c](const Signature& sig, const SupportSet& s) {
    const int k = static_cast<int>(xs.size());
    int lits = 0, afree = 0;
    for (int i = 0; i < k; ++i) {
      bool has_lit = false;
      for (const SupportElement& e : s.elements())
        if (e.is_literal() && e.col() == static_cast<std::size_t>(i) &&
            e.value() != a) {
          has_lit = true;
          break;
        }
      if (has_lit) ++lits;
      if (!sig.at(xs[static_cast<std::size_t>(i)]).contains(a)) ++afree;
    }
    // The domain-only disjunct pairs with the empty support; a nonempty
    // support must witness the literal disjunct or it would not survive
    // widening.
    return count_at_least(lits, k - c + 1, xs.size()) ||
           (s.empty() && count_at_least(afree, k - c, xs.size()));
  };
  return p;
}

SupportProperty occurrence_geq_property(const OccurrenceGeqSpec& spec) {
  SupportProperty p;
  p.name = "occurrence_geq";
  p.scope = spec.xs;
  p.universe = UniverseKind::kLiterals;
  Schema xs = spec.xs;
  int a = spec.value, c = spec.count;
  p.eval = [xs, a, c](const Signature& sig, const SupportSet& s) {
    const int k = static_cast<int>(xs.size());
    int lits = 0, forced = 0;
    for (int i = 0; i < k; ++i) {
      if (s.contains_literal(static_cast<std::size_t>(i), a)) ++lits;
      // "no value other than a remains" is vacuously true of an empty
      // domain, which keeps the disjunct monotone under narrowing.
      bool only_a = true;
      for (int b : sig.at(xs[static_cast<std::size_t>(i)]).values())
        if (b != a) {
          only_a = false;
          break;
        }
      if (only_a) ++forced;
    }
    return count_at_least(lits, c + 1, xs.size()) ||
           (s.empty() && count_at_least(forced, c, xs.size()));
  };
  return p;
}

}  // namespace gensup
