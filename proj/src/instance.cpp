#include "gensup/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace gensup {

const VarDecl* Instance::find_var(const VarId& v) const {
  for (const VarDecl& d : vars)
    if (d.id == v) return &d;
  return nullptr;
}

const VecDecl* Instance::find_vec(const std::string& name) const {
  for (const VecDecl& d : vecs)
    if (d.name == name) return &d;
  return nullptr;
}

Signature Instance::root_signature() const {
  Signature sig;
  for (const VarDecl& d : vars) sig.set(d.id, d.domain);
  return sig;
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw parse_error("line " + std::to_string(line) + ": " + msg);
}

int to_int(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) fail(line, "bad integer '" + tok + "'");
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "bad integer '" + tok + "'");
  }
}

struct ParserState {
  Instance inst;

  VarId var(const std::string& name, int line) const {
    VarId v(name);
    if (!inst.find_var(v)) fail(line, "unknown variable '" + name + "'");
    return v;
  }
  Schema vec(const std::string& name, int line) const {
    const VecDecl* d = inst.find_vec(name);
    if (!d) fail(line, "unknown vector '" + name + "'");
    return Schema(d->vars);
  }
};

}  // namespace

Instance parse_instance(std::istream& in) {
  ParserState st;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.resize(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "var") {
      if (tok.size() != 4) fail(line, "var expects: var <name> <lo> <hi>");
      VarId id(tok[1]);
      if (st.inst.find_var(id)) fail(line, "duplicate variable '" + tok[1] + "'");
      st.inst.vars.push_back(
          {id, Domain::range(to_int(tok[2], line), to_int(tok[3], line)),
           true});
    } else if (kw == "varset") {
      if (tok.size() < 2) fail(line, "varset expects: varset <name> <v>...");
      VarId id(tok[1]);
      if (st.inst.find_var(id)) fail(line, "duplicate variable '" + tok[1] + "'");
      std::vector<int> vs;
      for (std::size_t i = 2; i < tok.size(); ++i)
        vs.push_back(to_int(tok[i], line));
      st.inst.vars.push_back({id, Domain::of(std::move(vs)), false});
    } else if (kw == "vec") {
      if (tok.size() < 2) fail(line, "vec expects: vec <name> <var>...");
      if (st.inst.find_vec(tok[1])) fail(line, "duplicate vector '" + tok[1] + "'");
      VecDecl d;
      d.name = tok[1];
      for (std::size_t i = 2; i < tok.size(); ++i)
        d.vars.push_back(st.var(tok[i], line));
      st.inst.vecs.push_back(std::move(d));
    } else if (kw == "element") {
      if (tok.size() != 4) fail(line, "element expects: element <vec> <var> <var>");
      st.inst.constraints.push_back(
          {ElementSpec{st.vec(tok[1], line), st.var(tok[2], line),
                       st.var(tok[3], line)},
           tok[1]});
    } else if (kw == "occurrenceleq" || kw == "occurrencegeq") {
      if (tok.size() != 4)
        fail(line, kw + " expects: " + kw + " <vec> <a> <c>");
      Schema xs = st.vec(tok[1], line);
      int a = to_int(tok[2], line), c = to_int(tok[3], line);
      if (kw == "occurrenceleq")
        st.inst.constraints.push_back({OccurrenceLeqSpec{xs, a, c}, tok[1]});
      else
        st.inst.constraints.push_back({OccurrenceGeqSpec{xs, a, c}, tok[1]});
    } else if (kw == "diseq") {
      if (tok.size() != 3) fail(line, "diseq expects: diseq <var> <var>");
      st.inst.constraints.push_back(
          {DiseqSpec{st.var(tok[1], line), st.var(tok[2], line)}, ""});
    } else if (kw == "table") {
      if (tok.size() < 3 || tok[2] != ":")
        fail(line, "table expects: table <vec> : <row> ; <row> ; ...");
      Schema xs = st.vec(tok[1], line);
      std::vector<Tuple> rows;
      Tuple cur;
      for (std::size_t i = 3; i < tok.size(); ++i) {
        if (tok[i] == ";") {
          if (cur.size() != xs.size()) fail(line, "table row arity mismatch");
          rows.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(to_int(tok[i], line));
        }
      }
      if (!cur.empty()) fail(line, "table row missing terminating ';'");
      st.inst.constraints.push_back({TableSpec{xs, std::move(rows)}, tok[1]});
    } else {
      fail(line, "unknown directive '" + kw + "'");
    }
  }
  return std::move(st.inst);
}

Instance parse_instance_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_instance(in);
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  for (const VarDecl& d : inst.vars) {
    bool contiguous = !d.domain.empty() &&
                      static_cast<int>(d.domain.size()) ==
                          d.domain.max() - d.domain.min() + 1;
    if (d.range_form && contiguous) {
      out << "var " << d.id.name << ' ' << d.domain.min() << ' '
          << d.domain.max() << '\n';
    } else {
      out << "varset " << d.id.name;
      for (int v : d.domain.values()) out << ' ' << v;
      out << '\n';
    }
  }
  for (const VecDecl& d : inst.vecs) {
    out << "vec " << d.name;
    for (const VarId& v : d.vars) out << ' ' << v.name;
    out << '\n';
  }
  for (const ConstraintDecl& c : inst.constraints) {
    if (const auto* el = std::get_if<ElementSpec>(&c.spec)) {
      out << "element " << c.vec_name << ' ' << el->y.name << ' '
          << el->z.name << '\n';
    } else if (const auto* leq = std::get_if<OccurrenceLeqSpec>(&c.spec)) {
      out << "occurrenceleq " << c.vec_name << ' ' << leq->value << ' '
          << leq->count << '\n';
    } else if (const auto* geq = std::get_if<OccurrenceGeqSpec>(&c.spec)) {
      out << "occurrencegeq " << c.vec_name << ' ' << geq->value << ' '
          << geq->count << '\n';
    } else if (const auto* tb = std::get_if<TableSpec>(&c.spec)) {
      out << "table " << c.vec_name << " :";
      for (const Tuple& row : tb->rows) {
        for (int v : row) out << ' ' << v;
        out << " ;";
      }
      out << '\n';
    } else {
      const auto& dq = std::get<DiseqSpec>(c.spec);
      out << "diseq " << dq.x.name << ' ' << dq.y.name << '\n';
    }
  }
  return out.str();
}

Instance make_occurrence_benchmark(int n, int copies) {
  if (n < 2) throw error("benchmark needs at least two variables");
  Instance inst;
  std::vector<VarId> xs;
  xs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    VarId id("x" + std::to_string(i));
    inst.vars.push_back({id, Domain::range(1, 2), true});
    xs.push_back(id);
  }
  inst.vecs.push_back({"X", xs});
  Schema schema(xs);
  // Band of adjacent disequalities over the tail. The 100-variable default
  // keeps the canonical 19 pairs; other sizes take ceil(n/5) pairs.
  int pairs = n == 100 ? 19 : static_cast<int>((n + 4) / 5);
  pairs = std::min(pairs, n - 1);
  for (int i = n - 1 - pairs; i <= n - 2; ++i)
    inst.constraints.push_back(
        {DiseqSpec{xs[static_cast<std::size_t>(i)],
                   xs[static_cast<std::size_t>(i + 1)]},
         ""});
  int bound = n == 100 ? 90 : static_cast<int>(std::floor(0.9 * n));
  for (int c = 0; c < copies; ++c)
    inst.constraints.push_back({OccurrenceLeqSpec{schema, 1, bound}, "X"});
  return inst;
}

}  // namespace gensup
