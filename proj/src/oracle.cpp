#include "gensup/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gensup {

Signature gac_signature(const ConstraintSpec& spec, const Signature& sig,
                        std::size_t bound) {
  Schema scope = scope_of(spec);
  Relation ext = denote(spec, sig, bound);
  Signature out = sig;
  for (const VarId& v : scope.distinct_vars()) {
    std::vector<std::size_t> cols = scope.indices_of(v);
    std::vector<int> kept;
    for (int a : sig.at(v).values()) {
      bool supported = false;
      for (const Tuple& t : ext.tuples()) {
        bool all = true;
        for (std::size_t c : cols)
          if (t[c] != a) {
            all = false;
            break;
          }
        if (all) {
          supported = true;
          break;
        }
      }
      if (supported) kept.push_back(a);
    }
    out.set(v, Domain::of(std::move(kept)));
  }
  return out;
}

namespace {

std::vector<SupportElement> lattice_universe(const SupportProperty& p,
                                             const SignatureLattice& lattice) {
  Signature base;
  for (std::size_t i = 0; i < lattice.var_count(); ++i)
    base.set(lattice.var(i), lattice.base_domain(i));
  return universe_for(p, base);
}

}  // namespace

SoundnessResult check_sound(const std::vector<SupportProperty>& props,
                            const ConstraintSpec& spec,
                            const SignatureLattice& lattice) {
  SoundnessResult result;
  std::vector<PropertyTable> tables;
  tables.reserve(props.size());
  for (const SupportProperty& p : props)
    tables.emplace_back(p, lattice, lattice_universe(p, lattice));
  for (auto code : lattice.all(/*include_empty=*/false)) {
    if (!lattice.singleton(code)) continue;
    ++result.checked;
    bool all_supported = true;
    for (const PropertyTable& t : tables)
      if (!t.support_exists(code)) {
        all_supported = false;
        break;
      }
    if (!all_supported) continue;
    Signature sig = lattice.decode(code);
    if (denote(spec, sig).tuples().empty()) {
      result.counterexample = std::move(sig);
      return result;
    }
  }
  return result;
}

CompletenessResult check_complete(const std::vector<SupportProperty>& props,
                                  const ConstraintSpec& spec,
                                  const SignatureLattice& lattice) {
  CompletenessResult result;
  std::vector<PropertyTable> tables;
  tables.reserve(props.size());
  for (const SupportProperty& p : props)
    tables.emplace_back(p, lattice, lattice_universe(p, lattice));
  std::map<SignatureLattice::Code, std::vector<Tuple>> meaning;
  auto tuples_at = [&](SignatureLattice::Code c) -> const std::vector<Tuple>& {
    auto it = meaning.find(c);
    if (it == meaning.end())
      it = meaning.emplace(c, denote(spec, lattice.decode(c)).tuples()).first;
    return it->second;
  };
  auto supported_at = [&](SignatureLattice::Code c) {
    for (const PropertyTable& t : tables)
      if (!t.support_exists(c)) return false;
    return true;
  };
  for (auto code : lattice.all(/*include_empty=*/false)) {
    const std::vector<Tuple>& full = tuples_at(code);
    if (full.empty()) continue;
    ++result.checked;
    // Breadth-first descent; termination follows from finiteness of the
    // lattice.
    std::deque<SignatureLattice::Code> frontier{code};
    std::set<SignatureLattice::Code> seen{code};
    bool found = false;
    while (!frontier.empty() && !found) {
      auto cur = frontier.front();
      frontier.pop_front();
      const std::vector<Tuple>& narrowed = tuples_at(cur);
      bool keeps_all = std::includes(narrowed.begin(), narrowed.end(),
                                     full.begin(), full.end());
      if (keeps_all && supported_at(cur)) {
        found = true;
        if (narrowed.size() != full.size()) result.narrowing_always_equal = false;
        break;
      }
      for (int b = 0; b < lattice.total_bits(); ++b) {
        SignatureLattice::Code bit = SignatureLattice::Code{1} << b;
        if (!(cur & bit)) continue;
        SignatureLattice::Code child = cur & ~bit;
        if (!lattice.nonempty(child) || seen.count(child)) continue;
        seen.insert(child);
        frontier.push_back(child);
      }
    }
    if (!found) {
      result.counterexample = lattice.decode(code);
      return result;
    }
  }
  return result;
}

ConformanceResult check_schema_conformance(const PurePropagator& prop,
                                           const SupportProperty& property,
                                           const SignatureLattice& lattice) {
  ConformanceResult result;
  PropertyTable table(property, lattice, lattice_universe(property, lattice));
  auto violation = [&](SignatureLattice::Code sigma, SignatureLattice::Code s1,
                       PropertyTable::Mask lost, std::string reason) {
    result.violation =
        ConformanceViolation{lattice.decode(sigma), lattice.decode(s1),
                             table.materialize(lost), std::move(reason)};
  };
  std::set<std::pair<SignatureLattice::Code, PropertyTable::Mask>> done;
  for (auto sigma : lattice.all(/*include_empty=*/false)) {
    for (PropertyTable::Mask lost : table.minimal_supports(sigma)) {
      for (auto s1 : lattice.down_set(sigma, /*include_empty=*/false)) {
        const auto& mins1 = table.minimal_supports(s1);
        if (std::binary_search(mins1.begin(), mins1.end(), lost))
          continue;  // still a support: the schema does not fire
        if (!done.insert({s1, lost}).second) continue;
        ++result.checked;
        PropagatorOutcome out =
            prop(lattice.decode(s1), table.materialize(lost));
        if (out.found) {
          SignatureLattice::Code s2;
          try {
            s2 = lattice.encode(out.narrowed);
          } catch (const error&) {
            violation(sigma, s1, lost, "narrowed signature leaves the lattice");
            return result;
          }
          if (!lattice.leq(s2, s1)) {
            violation(sigma, s1, lost, "result does not narrow the signature");
            return result;
          }
          if (!lattice.nonempty(s2)) {
            violation(sigma, s1, lost, "narrowed signature has an empty domain");
            return result;
          }
          PropertyTable::Mask smask;
          try {
            smask = table.mask_of(out.support);
          } catch (const error&) {
            violation(sigma, s1, lost, "support outside the universe");
            return result;
          }
          const auto& mins2 = table.minimal_supports(s2);
          if (!std::binary_search(mins2.begin(), mins2.end(), smask)) {
            violation(sigma, s1, lost,
                      "returned set is not a minimal support of the narrowing");
            return result;
          }
          for (auto s3 : lattice.interval(s2, s1)) {
            if (s3 == s2) continue;
            if (table.support_exists(s3)) {
              violation(sigma, s1, lost,
                        "a strictly wider narrowing still has support");
              return result;
            }
          }
        } else {
          for (auto s2 : lattice.down_set(s1, /*include_empty=*/false)) {
            if (table.support_exists(s2)) {
              violation(sigma, s1, lost,
                        "refused although a narrowing has support");
              return result;
            }
          }
        }
      }
    }
  }
  return result;
}

}  // namespace gensup
