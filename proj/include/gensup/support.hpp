#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "gensup/core.hpp"

namespace gensup {

/// One piece of support evidence: a full scope tuple or a single
/// (column, value) literal. A literal (i, a) is valid under a signature when
/// a is in the domain of the i-th scope variable; a tuple is valid when it is
/// a wellformed scope tuple.
class SupportElement {
 public:
  static SupportElement full_tuple(Tuple t);
  static SupportElement literal(std::size_t col, int value);

  bool is_literal() const { return literal_; }
  bool is_tuple() const { return !literal_; }
  std::size_t col() const { return col_; }
  int value() const { return value_; }
  const Tuple& tuple() const { return tuple_; }

  bool valid(const Schema& scope, const Signature& sig) const;

  friend bool operator==(const SupportElement&, const SupportElement&) =
      default;
  friend auto operator<=>(const SupportElement&, const SupportElement&) =
      default;

 private:
  SupportElement() = default;
  bool literal_ = false;
  std::size_t col_ = 0;
  int value_ = 0;
  Tuple tuple_;
};

/// Finite set of support elements, kept sorted for canonical comparison.
/// The empty set is valid under every signature.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<SupportElement> elems);
  static SupportSet literals(
      std::initializer_list<std::pair<std::size_t, int>> lits);
  static SupportSet of_tuples(std::initializer_list<Tuple> ts);

  bool empty() const { return elems_.empty(); }
  std::size_t size() const { return elems_.size(); }
  bool contains(const SupportElement& e) const;
  bool contains_literal(std::size_t col, int value) const;
  bool valid(const Schema& scope, const Signature& sig) const;
  bool subset_of(const SupportSet& other) const;
  void insert(SupportElement e);
  const std::vector<SupportElement>& elements() const { return elems_; }

  friend bool operator==(const SupportSet&, const SupportSet&) = default;
  friend auto operator<=>(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<SupportElement> elems_;
};

enum class UniverseKind { kTuples, kLiterals };

/// Named predicate over (signature, support set).
struct SupportProperty {
  std::string name;
  Schema scope;
  UniverseKind universe = UniverseKind::kTuples;
  std::function<bool(const Signature&, const SupportSet&)> eval;
};

/// Evaluates the property; throws when sig does not cover the scope.
bool holds(const SupportProperty& p, const Signature& sig,
           const SupportSet& s);

std::vector<SupportElement> tuple_universe(
    const Schema& scope, const Signature& sig,
    std::size_t bound = kDefaultEnumerationBound);
std::vector<SupportElement> literal_universe(const Schema& scope,
                                             const Signature& sig);
std::vector<SupportElement> universe_for(
    const SupportProperty& p, const Signature& sig,
    std::size_t bound = kDefaultEnumerationBound);

inline constexpr std::size_t kMaxUniverse = 20;

/// All minimal subsets S of `universe` with P(sig, S): no proper subset also
/// satisfies the property. Throws enumeration_limit_error when the universe
/// exceeds kMaxUniverse elements.
std::vector<SupportSet> support_sets(
    const SupportProperty& p, const Signature& sig,
    const std::vector<SupportElement>& universe);

bool support_exists(const SupportProperty& p, const Signature& sig,
                    const std::vector<SupportElement>& universe);

/// True iff every property in the collection has a nonempty support-set
/// family over the shared universe.
bool collection_supported(const std::vector<SupportProperty>& props,
                          const Signature& sig,
                          const std::vector<SupportElement>& universe);

enum class Combine { kAnd, kOr };

/// Pointwise conjunction or disjunction; scopes must match.
SupportProperty combine(const SupportProperty& p, const SupportProperty& q,
                        Combine op);

SupportProperty true_property(Schema scope);
SupportProperty false_property(Schema scope);

/// The literal-support property for column i and value a: some element of S
/// carries the literal (either a full tuple whose i-th column is a, or the
/// literal itself). Minimal supports are singletons.
SupportProperty literal_property(Schema scope, std::size_t col, int value);

/// Demo property over full tuples: some tuple in S sums to at least
/// `threshold` and anchors column 0 at the current minimum of its domain.
SupportProperty min_anchored_sum_property(Schema scope, int threshold);

/// Deliberately unstable demo: S must carry a literal on `lit_col` for every
/// value of `full` missing from `watch_col`'s current domain.
SupportProperty missing_value_mirror_property(Schema scope,
                                              std::size_t lit_col,
                                              std::size_t watch_col,
                                              Domain full);

/// Dense encoding of every sub-signature of a base signature over a fixed
/// variable list: one bit per (variable, value), so code c' is pointwise
/// below code c exactly when (c' & c) == c'.
class SignatureLattice {
 public:
  using Code = std::uint64_t;

  SignatureLattice(std::vector<VarId> vars, std::vector<Domain> base);
  static SignatureLattice over(const Schema& scope, const Signature& base);

  std::size_t var_count() const { return vars_.size(); }
  const VarId& var(std::size_t i) const { return vars_[i]; }
  const Domain& base_domain(std::size_t i) const { return base_[i]; }
  int total_bits() const { return total_bits_; }

  Code top() const;
  bool leq(Code a, Code b) const { return (a & b) == a; }
  bool nonempty(Code c) const;
  bool singleton(Code c) const;
  Signature decode(Code c) const;
  /// Throws when a domain value falls outside the base.
  Code encode(const Signature& sig) const;

  /// All codes at or below `from`, ascending; optionally keeps codes with an
  /// empty per-variable field.
  std::vector<Code> down_set(Code from, bool include_empty) const;
  std::vector<Code> all(bool include_empty) const;
  /// Codes c with lo ⊑ c ⊑ hi, ascending.
  std::vector<Code> interval(Code lo, Code hi) const;

 private:
  std::vector<VarId> vars_;
  std::vector<Domain> base_;
  std::vector<int> offset_;
  int total_bits_ = 0;
};

/// Precomputed satisfaction and validity of one property over an entire
/// lattice and a fixed support-element universe. Memory is bounded by
/// 2^total_bits lattice codes times 2^|universe| subset masks.
class PropertyTable {
 public:
  using Code = SignatureLattice::Code;
  using Mask = std::uint32_t;

  PropertyTable(const SupportProperty& p, const SignatureLattice& lattice,
                std::vector<SupportElement> universe);

  const SignatureLattice& lattice() const { return *lattice_; }
  const std::vector<SupportElement>& universe() const { return universe_; }
  std::size_t universe_size() const { return universe_.size(); }

  bool sat(Code c, Mask m) const { return sat_[c][m]; }
  Mask valid_mask(Code c) const { return vmask_[c]; }
  const std::vector<Mask>& minimal_supports(Code c) const {
    return minimal_[c];
  }
  bool support_exists(Code c) const { return !minimal_[c].empty(); }
  const SupportSet& materialize(Mask m) const { return sets_[m]; }
  /// Throws when an element of s is not in the universe.
  Mask mask_of(const SupportSet& s) const;

 private:
  const SignatureLattice* lattice_;
  std::vector<SupportElement> universe_;
  std::vector<SupportSet> sets_;
  std::vector<std::vector<bool>> sat_;
  std::vector<Mask> vmask_;
  std::vector<std::vector<Mask>> minimal_;
};

struct StabilityCounterexample {
  Signature wider;
  Signature narrower;
  SupportSet support;
};

struct StabilityCheck {
  std::optional<StabilityCounterexample> counterexample;
  std::uint64_t triples_scanned = 0;
  bool found() const { return counterexample.has_value(); }
};

/// Exhaustively searches the sub-signature lattice of `top` and all subsets
/// of `universe` for a triple violating p-admissibility: P holds at the wider
/// signature, S stays valid at the narrower one, yet P fails there. Returns
/// the first violation in canonical (ascending code, ascending mask) order.
StabilityCheck p_admissible_check(const SupportProperty& p,
                                  const Signature& top,
                                  const std::vector<SupportElement>& universe);

/// Searches for a nonempty S and a pair narrower ⊑ wider with P holding at
/// the narrower signature but not at the wider one.
StabilityCheck backtrack_stable_check(
    const SupportProperty& p, const Signature& top,
    const std::vector<SupportElement>& universe);

}  // namespace gensup
