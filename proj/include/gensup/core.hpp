#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gensup {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an exhaustive enumeration would exceed its configured bound.
class enumeration_limit_error : public error {
 public:
  using error::error;
};

inline constexpr std::size_t kDefaultEnumerationBound = 1'000'000;

/// Decision-variable identifier. Totally ordered so containers and printed
/// output stay canonical.
struct VarId {
  std::string name;

  VarId() = default;
  explicit VarId(std::string n) : name(std::move(n)) {}

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

/// Finite integer domain held as a sorted set of values. The empty domain is
/// representable; emptiness signals failure at the solver level.
class Domain {
 public:
  Domain() = default;
  Domain(std::initializer_list<int> vs);

  static Domain of(std::vector<int> vs);
  /// Inclusive range; lo > hi yields the empty domain.
  static Domain range(int lo, int hi);

  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  bool contains(int v) const;
  int min() const;
  int max() const;
  const std::vector<int>& values() const { return values_; }

  bool subset_of(const Domain& other) const;
  Domain intersect(const Domain& other) const;
  Domain without(int v) const;
  Domain with(int v) const;

  friend bool operator==(const Domain&, const Domain&) = default;
  friend auto operator<=>(const Domain&, const Domain&) = default;

 private:
  std::vector<int> values_;  // sorted, no duplicates
};

/// Ordered sequence of variable identifiers. Duplicates are permitted and
/// indexing is zero-based throughout.
class Schema {
 public:
  Schema() = default;
  Schema(std::initializer_list<VarId> vs) : vars_(vs) {}
  explicit Schema(std::vector<VarId> vs) : vars_(std::move(vs)) {}

  std::size_t size() const { return vars_.size(); }
  const VarId& operator[](std::size_t i) const;
  std::vector<VarId>::const_iterator begin() const { return vars_.begin(); }
  std::vector<VarId>::const_iterator end() const { return vars_.end(); }

  bool contains(const VarId& v) const;
  /// All positions holding v; empty when v does not occur.
  std::vector<std::size_t> indices_of(const VarId& v) const;
  /// Set inclusion: every variable of this schema occurs in `other`,
  /// regardless of order, multiplicity or length.
  bool subset_of(const Schema& other) const;
  std::vector<VarId> distinct_vars() const;  // sorted, unique

  friend Schema operator+(const Schema& a, const Schema& b);
  friend bool operator==(const Schema&, const Schema&) = default;
  friend auto operator<=>(const Schema&, const Schema&) = default;

 private:
  std::vector<VarId> vars_;
};

using Tuple = std::vector<int>;

/// Finite map from variables to domains, ordered pointwise by domain
/// inclusion.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::map<VarId, Domain> doms) : doms_(std::move(doms)) {}

  /// Throws when the variable is unmapped.
  const Domain& at(const VarId& v) const;
  const Domain* find(const VarId& v) const;
  Signature& set(VarId v, Domain d);
  bool covers(const Schema& s) const;
  /// True when every mapped domain is nonempty.
  bool nonempty() const;
  const std::map<VarId, Domain>& domains() const { return doms_; }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<VarId, Domain> doms_;
};

/// narrow(x) is a subset of wide(x) for every variable of `over`.
bool signature_leq(const Signature& narrow, const Signature& wide,
                   const Schema& over);
/// As signature_leq, with at least one proper subset.
bool signature_lt(const Signature& narrow, const Signature& wide,
                  const Schema& over);

/// Is t a wellformed tuple for schema x under sig (length and per-column
/// domain membership)?
bool is_x_tuple(const Schema& x, const Signature& sig, const Tuple& t);

/// The full set of wellformed x-tuples under sig, in ascending lexicographic
/// order. Coherence is not applied. Throws enumeration_limit_error when the
/// domain product exceeds `bound`.
std::vector<Tuple> tuples_of(const Schema& x, const Signature& sig,
                             std::size_t bound = kDefaultEnumerationBound);

/// All columns of t labelled by z hold the same value. Vacuously true when z
/// does not occur in x.
bool coherent(const Schema& x, const Tuple& t, const VarId& z);
bool coherent(const Schema& x, const Tuple& t, const Schema& wrt);

class Relation {
 public:
  Relation() = default;
  /// Validates tuple lengths against the schema; tuple set is stored sorted
  /// without duplicates.
  Relation(Schema schema, std::vector<Tuple> tuples);

  const Schema& schema() const { return schema_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  bool contains(const Tuple& t) const;
  bool wellformed_under(const Signature& sig) const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  Schema schema_;
  std::vector<Tuple> tuples_;
};

/// Keep tuples whose i-th column equals a. Throws when i is out of range.
Relation select_index_eq(const Relation& r, std::size_t i, int a);
/// Keep tuples all of whose x-labelled columns equal a.
Relation select_value_eq(const Relation& r, const VarId& x, int a);
/// Keep tuples coherent with every variable of `wrt`.
Relation select_coherent(const Relation& r, const Schema& wrt);

/// Witness for target ⊆ source: target[i] = source[indices[i]] for all i.
class ProjectionMap {
 public:
  ProjectionMap(Schema target, Schema source, std::vector<std::size_t> indices);
  static ProjectionMap identity(const Schema& s);

  const Schema& target() const { return target_; }
  const Schema& source() const { return source_; }
  const std::vector<std::size_t>& indices() const { return indices_; }

 private:
  Schema target_;
  Schema source_;
  std::vector<std::size_t> indices_;
};

/// Every witness map for target ⊆ source; empty exactly when the inclusion
/// fails. Enumeration order is lexicographic in the per-position choices.
std::vector<ProjectionMap> projection_maps(const Schema& target,
                                           const Schema& source);

Tuple project(const ProjectionMap& f, const Tuple& t);
Relation project(const ProjectionMap& f, const Relation& r);

/// Schemata mutually included and equal coherent tuple sets after reordering
/// through any witness map.
bool constraint_equiv(const Relation& a, const Relation& b);

}  // namespace gensup
