#pragma once

#include <string>
#include <variant>

#include "gensup/core.hpp"

namespace gensup {

/// element(X, y, z): the y column holds a zero-based position i into the
/// vector part and the z column equals the X[i] column. Scope is X·y·z.
struct ElementSpec {
  Schema xs;
  VarId y;
  VarId z;

  Schema scope() const { return xs + Schema{y, z}; }
  std::size_t y_col() const { return xs.size(); }
  std::size_t z_col() const { return xs.size() + 1; }
};

/// occurrenceleq(X, a, c): value a occurs at most c times across X.
/// Counts outside [0, |X|] are accepted and degrade to tautology or
/// contradiction.
struct OccurrenceLeqSpec {
  Schema xs;
  int value = 0;
  int count = 0;
};

/// occurrencegeq(X, a, c): value a occurs at least c times across X.
struct OccurrenceGeqSpec {
  Schema xs;
  int value = 0;
  int count = 0;
};

/// Extensional constraint: scope plus an explicit set of candidate rows.
struct TableSpec {
  Schema xs;
  std::vector<Tuple> rows;
};

/// Two variables take distinct values.
struct DiseqSpec {
  VarId x;
  VarId y;
};

using ConstraintSpec = std::variant<ElementSpec, OccurrenceLeqSpec,
                                    OccurrenceGeqSpec, TableSpec, DiseqSpec>;

Schema scope_of(const ConstraintSpec& spec);
std::string kind_name(const ConstraintSpec& spec);

/// Extension of the constraint under sig: every coherent scope tuple
/// satisfying the constraint's defining predicate.
Relation denote(const ConstraintSpec& spec, const Signature& sig,
                std::size_t bound = kDefaultEnumerationBound);

/// Point test over the constraint's scope. True iff t satisfies the defining
/// predicate and is coherent with the scope. Throws on length mismatch.
bool check_tuple(const ConstraintSpec& spec, const Tuple& t);

}  // namespace gensup
