#pragma once

#include "gensup/semantics.hpp"
#include "gensup/support.hpp"

namespace gensup {

// Column conventions: for element(X, y, z) the vector columns are 0..k-1,
// the index variable is column k and the result variable is column k+1; the
// index column holds zero-based positions into the vector part. Occurrence
// constraints use columns 0..|X|-1.

/// Result of one propagation step: either a narrowed signature together with
/// a fresh support, or the verdict that no sub-signature can be supported.
struct PropagatorOutcome {
  bool found = false;
  Signature narrowed;  // meaningful only when found
  SupportSet support;

  static PropagatorOutcome no_support() { return {}; }
  static PropagatorOutcome new_support(Signature sig, SupportSet s) {
    PropagatorOutcome o;
    o.found = true;
    o.narrowed = std::move(sig);
    o.support = std::move(s);
    return o;
  }
};

/// Index-domain watcher for element. With several candidate indices the
/// support is the pair of min/max index literals; with a single index i the
/// vector variable X[i] is narrowed to its intersection with z's domain and
/// the support is one z literal per surviving value.
PropagatorOutcome element_p1(const ElementSpec& spec, const Signature& sig,
                             const SupportSet& lost);

/// Prunes index values whose vector variable shares no value with z.
PropagatorOutcome element_p2(const ElementSpec& spec, const Signature& sig);

/// Prunes result values that no candidate vector variable can supply.
PropagatorOutcome element_p3(const ElementSpec& spec, const Signature& sig);

/// At-most propagation. Indices carried by still-valid literals of `lost`
/// are re-used first; replacements are drawn from the smallest free indices.
PropagatorOutcome occurrence_leq(const OccurrenceLeqSpec& spec,
                                 const Signature& sig,
                                 const SupportSet& lost);

/// At-least propagation, the mirror image of occurrence_leq.
PropagatorOutcome occurrence_geq(const OccurrenceGeqSpec& spec,
                                 const Signature& sig,
                                 const SupportSet& lost);

/// Disequality: once either side is a singleton its value is removed from
/// the other side.
PropagatorOutcome diseq_step(const DiseqSpec& spec, const Signature& sig);

SupportProperty element_p1_property(const ElementSpec& spec);
SupportProperty element_p2_property(const ElementSpec& spec);
SupportProperty element_p3_property(const ElementSpec& spec);
SupportProperty occurrence_leq_property(const OccurrenceLeqSpec& spec);
SupportProperty occurrence_geq_property(const OccurrenceGeqSpec& spec);

}  // namespace gensup
