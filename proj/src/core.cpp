#include "gensup/core.hpp"

#include <algorithm>
#include <set>

namespace gensup {

Domain::Domain(std::initializer_list<int> vs) : values_(vs) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
}

Domain Domain::of(std::vector<int> vs) {
  Domain d;
  d.values_ = std::move(vs);
  std::sort(d.values_.begin(), d.values_.end());
  d.values_.erase(std::unique(d.values_.begin(), d.values_.end()),
                  d.values_.end());
  return d;
}

Domain Domain::range(int lo, int hi) {
  Domain d;
  for (int v = lo; v <= hi; ++v) d.values_.push_back(v);
  return d;
}

bool Domain::contains(int v) const {
  return std::binary_search(values_.begin(), values_.end(), v);
}

int Domain::min() const {
  if (values_.empty()) throw error("min of empty domain");
  return values_.front();
}

int Domain::max() const {
  if (values_.empty()) throw error("max of empty domain");
  return values_.back();
}

bool Domain::subset_of(const Domain& other) const {
  return std::includes(other.values_.begin(), other.values_.end(),
                       values_.begin(), values_.end());
}

Domain Domain::intersect(const Domain& other) const {
  Domain d;
  std::set_intersection(values_.begin(), values_.end(), other.values_.begin(),
                        other.values_.end(), std::back_inserter(d.values_));
  return d;
}

Domain Domain::without(int v) const {
  Domain d = *this;
  auto it = std::lower_bound(d.values_.begin(), d.values_.end(), v);
  if (it != d.values_.end() && *it == v) d.values_.erase(it);
  return d;
}

Domain Domain::with(int v) const {
  Domain d = *this;
  auto it = std::lower_bound(d.values_.begin(), d.values_.end(), v);
  if (it == d.values_.end() || *it != v) d.values_.insert(it, v);
  return d;
}

const VarId& Schema::operator[](std::size_t i) const {
  if (i >= vars_.size()) throw error("schema index out of range");
  return vars_[i];
}

bool Schema::contains(const VarId& v) const {
  return std::find(vars_.begin(), vars_.end(), v) != vars_.end();
}

std::vector<std::size_t> Schema::indices_of(const VarId& v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == v) out.push_back(i);
  return out;
}

bool Schema::subset_of(const Schema& other) const {
  for (const VarId& v : vars_)
    if (!other.contains(v)) return false;
  return true;
}

std::vector<VarId> Schema::distinct_vars() const {
  std::vector<VarId> out = vars_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Schema operator+(const Schema& a, const Schema& b) {
  std::vector<VarId> vs = a.vars_;
  vs.insert(vs.end(), b.vars_.begin(), b.vars_.end());
  return Schema(std::move(vs));
}

const Domain& Signature::at(const VarId& v) const {
  auto it = doms_.find(v);
  if (it == doms_.end()) throw error("signature has no entry for " + v.name);
  return it->second;
}

const Domain* Signature::find(const VarId& v) const {
  auto it = doms_.find(v);
  return it == doms_.end() ? nullptr : &it->second;
}

Signature& Signature::set(VarId v, Domain d) {
  doms_[std::move(v)] = std::move(d);
  return *this;
}

bool Signature::covers(const Schema& s) const {
  for (const VarId& v : s)
    if (doms_.find(v) == doms_.end()) return false;
  return true;
}

bool Signature::nonempty() const {
  for (const auto& [v, d] : doms_)
    if (d.empty()) return false;
  return true;
}

bool signature_leq(const Signature& narrow, const Signature& wide,
                   const Schema& over) {
  for (const VarId& v : over.distinct_vars())
    if (!narrow.at(v).subset_of(wide.at(v))) return false;
  return true;
}

bool signature_lt(const Signature& narrow, const Signature& wide,
                  const Schema& over) {
  if (!signature_leq(narrow, wide, over)) return false;
  for (const VarId& v : over.distinct_vars())
    if (narrow.at(v) != wide.at(v)) return true;
  return false;
}

bool is_x_tuple(const Schema& x, const Signature& sig, const Tuple& t) {
  if (t.size() != x.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!sig.at(x[i]).contains(t[i])) return false;
  return true;
}

std::vector<Tuple> tuples_of(const Schema& x, const Signature& sig,
                             std::size_t bound) {
  std::vector<const std::vector<int>*> cols;
  cols.reserve(x.size());
  std::size_t product = 1;
  for (const VarId& v : x) {
    const Domain& d = sig.at(v);
    if (d.empty()) return {};
    if (product > bound / d.size())
      throw enumeration_limit_error("tuple enumeration exceeds bound");
    product *= d.size();
    cols.push_back(&d.values());
  }
  std::vector<Tuple> out;
  out.reserve(product);
  Tuple cur(x.size());
  std::vector<std::size_t> pos(x.size(), 0);
  for (;;) {
    for (std::size_t i = 0; i < x.size(); ++i) cur[i] = (*cols[i])[pos[i]];
    out.push_back(cur);
    std::size_t i = x.size();
    while (i > 0) {
      --i;
      if (++pos[i] < cols[i]->size()) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
    if (x.size() == 0) return out;  // single empty tuple
  }
}

bool coherent(const Schema& x, const Tuple& t, const VarId& z) {
  if (t.size() != x.size()) throw error("coherence: tuple length mismatch");
  int seen = 0;
  bool have = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] == z)) continue;
    if (!have) {
      seen = t[i];
      have = true;
    } else if (t[i] != seen) {
      return false;
    }
  }
  return true;
}

bool coherent(const Schema& x, const Tuple& t, const Schema& wrt) {
  for (const VarId& z : wrt.distinct_vars())
    if (!coherent(x, t, z)) return false;
  return true;
}

Relation::Relation(Schema schema, std::vector<Tuple> tuples)
    : schema_(std::move(schema)), tuples_(std::move(tuples)) {
  for (const Tuple& t : tuples_)
    if (t.size() != schema_.size())
      throw error("relation tuple length does not match schema");
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool Relation::contains(const Tuple& t) const {
  return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

bool Relation::wellformed_under(const Signature& sig) const {
  for (const Tuple& t : tuples_)
    if (!is_x_tuple(schema_, sig, t)) return false;
  return true;
}

Relation select_index_eq(const Relation& r, std::size_t i, int a) {
  if (i >= r.schema().size()) throw error("selection index out of range");
  std::vector<Tuple> kept;
  for (const Tuple& t : r.tuples())
    if (t[i] == a) kept.push_back(t);
  return Relation(r.schema(), std::move(kept));
}

Relation select_value_eq(const Relation& r, const VarId& x, int a) {
  std::vector<std::size_t> idx = r.schema().indices_of(x);
  std::vector<Tuple> kept;
  for (const Tuple& t : r.tuples()) {
    bool ok = true;
    for (std::size_t i : idx)
      if (t[i] != a) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(t);
  }
  return Relation(r.schema(), std::move(kept));
}

Relation select_coherent(const Relation& r, const Schema& wrt) {
  std::vector<Tuple> kept;
  for (const Tuple& t : r.tuples())
    if (coherent(r.schema(), t, wrt)) kept.push_back(t);
  return Relation(r.schema(), std::move(kept));
}

ProjectionMap::ProjectionMap(Schema target, Schema source,
                             std::vector<std::size_t> indices)
    : target_(std::move(target)),
      source_(std::move(source)),
      indices_(std::move(indices)) {
  if (indices_.size() != target_.size())
    throw error("projection map arity mismatch");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= source_.size())
      throw error("projection map index out of range");
    if (!(target_[i] == source_[indices_[i]]))
      throw error("projection map does not witness the inclusion");
  }
}

ProjectionMap ProjectionMap::identity(const Schema& s) {
  std::vector<std::size_t> id(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) id[i] = i;
  return ProjectionMap(s, s, std::move(id));
}

std::vector<ProjectionMap> projection_maps(const Schema& target,
                                           const Schema& source) {
  std::vector<std::vector<std::size_t>> choices;
  choices.reserve(target.size());
  for (const VarId& v : target) {
    auto idx = source.indices_of(v);
    if (idx.empty()) return {};
    choices.push_back(std::move(idx));
  }
  std::vector<ProjectionMap> out;
  std::vector<std::size_t> pick(target.size(), 0);
  for (;;) {
    std::vector<std::size_t> idx(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) idx[i] = choices[i][pick[i]];
    out.emplace_back(target, source, std::move(idx));
    std::size_t i = target.size();
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (target.size() == 0) return out;
  }
}

Tuple project(const ProjectionMap& f, const Tuple& t) {
  if (t.size() != f.source().size())
    throw error("projection: tuple length does not match source schema");
  Tuple out(f.target().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = t[f.indices()[i]];
  return out;
}

Relation project(const ProjectionMap& f, const Relation& r) {
  if (!(r.schema() == f.source()))
    throw error("projection: relation schema does not match source");
  std::vector<Tuple> out;
  out.reserve(r.tuples().size());
  for (const Tuple& t : r.tuples()) out.push_back(project(f, t));
  return Relation(f.target(), std::move(out));
}

bool constraint_equiv(const Relation& a, const Relation& b) {
  if (!a.schema().subset_of(b.schema()) || !b.schema().subset_of(a.schema()))
    return false;
  auto maps = projection_maps(b.schema(), a.schema());
  // Incoherent tuples are dropped before reordering, so any witness works.
  const ProjectionMap& f = maps.front();
  Relation left = project(f, select_coherent(a, a.schema()));
  Relation right = select_coherent(b, b.schema());
  return left.tuples() == right.tuples();
}

}  // namespace gensup
