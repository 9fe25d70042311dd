#pragma once

#include <functional>
#include <optional>

#include "gensup/propagators.hpp"

namespace gensup {

/// Brute-force consistency reference: the largest sub-signature of `sig` in
/// which every remaining value of every scope variable appears in some
/// satisfying coherent tuple. Variables outside the scope are untouched.
Signature gac_signature(const ConstraintSpec& spec, const Signature& sig,
                        std::size_t bound = kDefaultEnumerationBound);

using PurePropagator =
    std::function<PropagatorOutcome(const Signature&, const SupportSet&)>;

struct SoundnessResult {
  std::optional<Signature> counterexample;  // singleton with support but no tuple
  std::uint64_t checked = 0;
  bool clean() const { return !counterexample.has_value(); }
};

/// Scans every singleton signature of the lattice. A counterexample is a
/// singleton where the whole collection is supported yet the constraint has
/// no satisfying tuple.
SoundnessResult check_sound(const std::vector<SupportProperty>& props,
                            const ConstraintSpec& spec,
                            const SignatureLattice& lattice);

struct CompletenessResult {
  std::optional<Signature> counterexample;  // nonempty meaning, no supported narrowing
  std::uint64_t checked = 0;
  bool narrowing_always_equal = true;  // whether the witness kept the meaning exactly
  bool clean() const { return !counterexample.has_value(); }
};

/// For every nonempty-meaning signature in the lattice, verifies some
/// narrowing exists that keeps every satisfying tuple and supports all the
/// properties. The search descends breadth-first from the signature itself.
CompletenessResult check_complete(const std::vector<SupportProperty>& props,
                                  const ConstraintSpec& spec,
                                  const SignatureLattice& lattice);

struct ConformanceViolation {
  Signature sigma;    // where the lost set was a support
  Signature sigma1;   // narrowing that invalidated it
  SupportSet lost;
  std::string reason;
};

struct ConformanceResult {
  std::optional<ConformanceViolation> violation;
  std::uint64_t checked = 0;  // distinct (signature, lost-support) propagator runs
  bool clean() const { return !violation.has_value(); }
};

/// Drives `prop` through every (support, narrowing) pair of the lattice where
/// the support is lost, then verifies the returned case exhaustively: a new
/// support must be minimal, valid, and maximal among narrowings; a refusal
/// must mean no narrowing admits any support.
ConformanceResult check_schema_conformance(const PurePropagator& prop,
                                           const SupportProperty& property,
                                           const SignatureLattice& lattice);

}  // namespace gensup
