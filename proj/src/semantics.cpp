#include "gensup/semantics.hpp"

#include <algorithm>

namespace gensup {

namespace {

struct ScopeVisitor {
  Schema operator()(const ElementSpec& s) const { return s.scope(); }
  Schema operator()(const OccurrenceLeqSpec& s) const { return s.xs; }
  Schema operator()(const OccurrenceGeqSpec& s) const { return s.xs; }
  Schema operator()(const TableSpec& s) const { return s.xs; }
  Schema operator()(const DiseqSpec& s) const { return Schema{s.x, s.y}; }
};

int count_value(const Tuple& t, std::size_t upto, int a) {
  int n = 0;
  for (std::size_t i = 0; i < upto; ++i)
    if (t[i] == a) ++n;
  return n;
}

bool satisfies(const ConstraintSpec& spec, const Tuple& t) {
  if (const auto* e = std::get_if<ElementSpec>(&spec)) {
    std::size_t k = e->xs.size();
    int i = t[e->y_col()];
    if (i < 0 || static_cast<std::size_t>(i) >= k) return false;
    return t[e->z_col()] == t[static_cast<std::size_t>(i)];
  }
  if (const auto* l = std::get_if<OccurrenceLeqSpec>(&spec))
    return count_value(t, l->xs.size(), l->value) <= l->count;
  if (const auto* g = std::get_if<OccurrenceGeqSpec>(&spec))
    return count_value(t, g->xs.size(), g->value) >= g->count;
  if (const auto* tb = std::get_if<TableSpec>(&spec))
    return std::find(tb->rows.begin(), tb->rows.end(), t) != tb->rows.end();
  const auto& d = std::get<DiseqSpec>(spec);
  (void)d;
  return t[0] != t[1];
}

}  // namespace

Schema scope_of(const ConstraintSpec& spec) {
  return std::visit(ScopeVisitor{}, spec);
}

std::string kind_name(const ConstraintSpec& spec) {
  switch (spec.index()) {
    case 0:
      return "element";
    case 1:
      return "occurrenceleq";
    case 2:
      return "occurrencegeq";
    case 3:
      return "table";
    default:
      return "diseq";
  }
}

Relation denote(const ConstraintSpec& spec, const Signature& sig,
                std::size_t bound) {
  Schema scope = scope_of(spec);
  std::vector<Tuple> kept;
  if (const auto* tb = std::get_if<TableSpec>(&spec)) {
    // The row set is already explicit; filter it instead of enumerating the
    // domain product.
    for (const Tuple& t : tb->rows)
      if (t.size() == scope.size() && is_x_tuple(scope, sig, t) &&
          coherent(scope, t, scope))
        kept.push_back(t);
    return Relation(std::move(scope), std::move(kept));
  }
  for (const Tuple& t : tuples_of(scope, sig, bound))
    if (coherent(scope, t, scope) && satisfies(spec, t)) kept.push_back(t);
  return Relation(std::move(scope), std::move(kept));
}

bool check_tuple(const ConstraintSpec& spec, const Tuple& t) {
  Schema scope = scope_of(spec);
  if (t.size() != scope.size())
    throw error("check_tuple: tuple length does not match scope");
  return coherent(scope, t, scope) && satisfies(spec, t);
}

}  // namespace gensup
