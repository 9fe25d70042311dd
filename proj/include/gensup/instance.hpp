#pragma once

#include <iosfwd>
#include <string>

#include "gensup/semantics.hpp"

namespace gensup {

class parse_error : public error {
 public:
  using error::error;
};

struct VarDecl {
  VarId id;
  Domain domain;
  bool range_form = true;  // written back as `var lo hi` vs `varset ...`
};

struct VecDecl {
  std::string name;
  std::vector<VarId> vars;
};

struct ConstraintDecl {
  ConstraintSpec spec;
  std::string vec_name;  // empty for diseq
};

/// A parsed problem: variables in declaration order (also the branching
/// order), named vectors, and constraints.
struct Instance {
  std::vector<VarDecl> vars;
  std::vector<VecDecl> vecs;
  std::vector<ConstraintDecl> constraints;

  const VarDecl* find_var(const VarId& v) const;
  const VecDecl* find_vec(const std::string& name) const;
  Signature root_signature() const;
};

/// Line-oriented text format; `#` starts a comment.
///   var <name> <lo> <hi>
///   varset <name> <v1> <v2> ...
///   vec <name> <var> ...
///   element <vec> <var> <var>
///   occurrenceleq <vec> <a> <c>
///   occurrencegeq <vec> <a> <c>
///   diseq <var> <var>
///   table <vec> : <t11> <t12> ... ; <t21> ... ;
Instance parse_instance(std::istream& in);
Instance parse_instance_string(const std::string& text);
Instance load_instance(const std::string& path);
std::string write_instance(const Instance& inst);

/// The occurrence stress instance: n variables over {1,2}, a disequality
/// band over the tail, and `copies` duplicates of one at-most constraint.
/// Defaults reproduce the canonical 100-variable shape (19 band pairs,
/// bound 90); other sizes use ceil(n/5) band pairs and bound floor(0.9*n).
Instance make_occurrence_benchmark(int n = 100, int copies = 100);

}  // namespace gensup
