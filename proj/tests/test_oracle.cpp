#include <doctest.h>

#include <random>

#include "gensup/oracle.hpp"

using namespace gensup;

namespace {

const VarId y{"y"}, z{"z"};
const VarId x0{"x0"}, x1{"x1"}, x2{"x2"};

SignatureLattice occ_lattice(int width, Domain values) {
  std::vector<VarId> vars;
  std::vector<Domain> base;
  const VarId all[] = {x0, x1, x2};
  for (int i = 0; i < width; ++i) {
    vars.push_back(all[i]);
    base.push_back(values);
  }
  return SignatureLattice(std::move(vars), std::move(base));
}

Schema occ_schema(int width) {
  Schema s;
  const VarId all[] = {x0, x1, x2};
  std::vector<VarId> vs(all, all + width);
  return Schema(vs);
}

}  // namespace

TEST_CASE("gac signature fixes the element example") {
  ElementSpec spec{Schema{x0}, y, z};
  Signature s;
  s.set(x0, {1, 2, 3}).set(y, {0}).set(z, {2, 3, 4});
  Signature g = gac_signature(spec, s);
  // Hand enumeration of the nine candidate tuples leaves (2,0,2) and (3,0,3).
  CHECK(g.at(x0) == Domain{2, 3});
  CHECK(g.at(y) == Domain{0});
  CHECK(g.at(z) == Domain{2, 3});
  CHECK(gac_signature(spec, g) == g);  // already consistent
}

TEST_CASE("gac signature on occurrence geq") {
  OccurrenceGeqSpec spec{Schema{x0, x1}, 1, 2};
  Signature s;
  s.set(x0, {1, 2}).set(x1, {1, 2});
  Signature g = gac_signature(spec, s);
  CHECK(g.at(x0) == Domain{1});
  CHECK(g.at(x1) == Domain{1});
}

TEST_CASE("gac signature is idempotent and monotone") {
  std::mt19937 rng(31);
  OccurrenceLeqSpec spec{Schema{x0, x1, x2}, 1, 1};
  for (int iter = 0; iter < 60; ++iter) {
    auto dom = [&] {
      std::vector<int> vs;
      for (int v = 1; v <= 3; ++v)
        if (rng() % 2) vs.push_back(v);
      if (vs.empty()) vs.push_back(1);
      return Domain::of(vs);
    };
    Signature s;
    s.set(x0, dom()).set(x1, dom()).set(x2, dom());
    Signature g = gac_signature(spec, s);
    CHECK(signature_leq(g, s, spec.xs));
    CHECK(gac_signature(spec, g) == g);
    // Narrow one domain and re-run: result stays below the original fixpoint
    Signature n = s;
    const Domain& d0 = s.at(x0);
    if (d0.size() > 1) {
      n.set(x0, d0.without(d0.min()));
      CHECK(signature_leq(gac_signature(spec, n), g, spec.xs));
    }
  }
}

TEST_CASE("soundness of the element property family") {
  ElementSpec spec{Schema{x0, x1}, y, z};
  Signature top;
  top.set(x0, {0, 1, 2}).set(x1, {0, 1, 2}).set(y, {0, 1}).set(z, {0, 1, 2});
  SignatureLattice lat = SignatureLattice::over(spec.scope(), top);
  auto r = check_sound({element_p1_property(spec), element_p2_property(spec),
                        element_p3_property(spec)},
                       spec, lat);
  CHECK(r.clean());
  CHECK(r.checked > 0);
}

TEST_CASE("soundness catches a property that ignores the constraint") {
  // `true` paired with an empty table: support exists everywhere, tuples
  // nowhere.
  TableSpec spec{Schema{x0}, {}};
  Signature top;
  top.set(x0, {0, 1});
  SignatureLattice lat = SignatureLattice::over(spec.xs, top);
  auto r = check_sound({true_property(spec.xs)}, spec, lat);
  REQUIRE_FALSE(r.clean());
  CHECK(denote(spec, *r.counterexample).tuples().empty());
}

TEST_CASE("completeness of the single element properties") {
  ElementSpec spec{Schema{x0, x1}, y, z};
  Signature top;
  top.set(x0, {0, 1}).set(x1, {0, 1}).set(y, {0, 1}).set(z, {0, 1});
  SignatureLattice lat = SignatureLattice::over(spec.scope(), top);
  CHECK(check_complete({element_p1_property(spec)}, spec, lat).clean());
  auto r2 = check_complete({element_p2_property(spec)}, spec, lat);
  CHECK(r2.clean());
  CHECK(r2.narrowing_always_equal);  // never needs to narrow at all
  CHECK(check_complete({element_p3_property(spec)}, spec, lat).clean());
  CHECK(check_complete({element_p1_property(spec), element_p2_property(spec),
                        element_p3_property(spec)},
                       spec, lat)
            .clean());
}

TEST_CASE("occurrence soundness and completeness across the small family") {
  for (int width = 1; width <= 3; ++width) {
    SignatureLattice lat = occ_lattice(width, Domain{1, 2});
    Schema xs = occ_schema(width);
    for (int c = 0; c <= width + 1; ++c) {
      OccurrenceLeqSpec leq{xs, 1, c};
      OccurrenceGeqSpec geq{xs, 1, c};
      CHECK(check_sound({occurrence_leq_property(leq)}, leq, lat).clean());
      CHECK(check_sound({occurrence_geq_property(geq)}, geq, lat).clean());
      CHECK(check_complete({occurrence_leq_property(leq)}, leq, lat).clean());
      CHECK(check_complete({occurrence_geq_property(geq)}, geq, lat).clean());
    }
  }
}

TEST_CASE("schema conformance of the element propagators") {
  SUBCASE("single vector variable, three values") {
    ElementSpec spec{Schema{x0}, y, z};
    Signature top;
    top.set(x0, {0, 1, 2}).set(y, {0, 1, 2}).set(z, {0, 1, 2});
    SignatureLattice lat = SignatureLattice::over(spec.scope(), top);
    auto p1 = [spec](const Signature& s, const SupportSet& lost) {
      return element_p1(spec, s, lost);
    };
    auto r = check_schema_conformance(p1, element_p1_property(spec), lat);
    CHECK(r.clean());
    CHECK(r.checked > 0);
  }
  SUBCASE("two vector variables") {
    ElementSpec spec{Schema{x0, x1}, y, z};
    Signature top;
    top.set(x0, {0, 1, 2}).set(x1, {0, 1, 2}).set(y, {0, 1, 2}).set(z,
                                                                   {0, 1, 2});
    SignatureLattice lat = SignatureLattice::over(spec.scope(), top);
    auto p1 = [spec](const Signature& s, const SupportSet& lost) {
      return element_p1(spec, s, lost);
    };
    CHECK(check_schema_conformance(p1, element_p1_property(spec), lat).clean());
    auto p2 = [spec](const Signature& s, const SupportSet&) {
      return element_p2(spec, s);
    };
    CHECK(check_schema_conformance(p2, element_p2_property(spec), lat).clean());
    auto p3 = [spec](const Signature& s, const SupportSet&) {
      return element_p3(spec, s);
    };
    CHECK(check_schema_conformance(p3, element_p3_property(spec), lat).clean());
  }
}

TEST_CASE("schema conformance of the occurrence propagators") {
  SignatureLattice lat = occ_lattice(3, Domain{1, 2});
  Schema xs = occ_schema(3);
  for (int c = 0; c <= 4; ++c) {
    OccurrenceLeqSpec leq{xs, 1, c};
    auto step = [leq](const Signature& s, const SupportSet& lost) {
      return occurrence_leq(leq, s, lost);
    };
    CHECK(check_schema_conformance(step, occurrence_leq_property(leq), lat)
              .clean());
    OccurrenceGeqSpec geq{xs, 1, c};
    auto gstep = [geq](const Signature& s, const SupportSet& lost) {
      return occurrence_geq(geq, s, lost);
    };
    CHECK(check_schema_conformance(gstep, occurrence_geq_property(geq), lat)
              .clean());
  }
}

TEST_CASE("a sabotaged occurrence propagator is caught") {
  // This variant never scans for replacement indices beyond the ones already
  // in the lost support, so it reports failure too eagerly.
  Schema xs = occ_schema(2);
  OccurrenceLeqSpec leq{xs, 1, 1};
  auto broken = [leq](const Signature& sig, const SupportSet& lost) {
    const int k = 2, need = k - leq.count;
    int afree = 0;
    for (const VarId& v : leq.xs)
      if (!sig.at(v).contains(leq.value)) ++afree;
    if (afree >= need) return PropagatorOutcome::new_support(sig, SupportSet{});
    SupportSet s;
    int usable = 0;
    for (const SupportElement& e : lost.elements())
      if (e.is_literal() && e.valid(leq.xs, sig) && e.value() != leq.value) {
        ++usable;
        s.insert(e);
      }
    if (usable > need) return PropagatorOutcome::new_support(sig, std::move(s));
    return PropagatorOutcome::no_support();
  };
  SignatureLattice lat = occ_lattice(2, Domain{1, 2});
  auto r =
      check_schema_conformance(broken, occurrence_leq_property(leq), lat);
  REQUIRE_FALSE(r.clean());
  CHECK(r.violation->reason == "refused although a narrowing has support");
}

TEST_CASE("element propagator fixpoint matches brute force on small sweeps") {
  // Every nonempty sub-signature of a one-element instance over {0,1,2}.
  ElementSpec spec{Schema{x0}, y, z};
  Signature top;
  top.set(x0, {0, 1, 2}).set(y, {0, 1, 2}).set(z, {0, 1, 2});
  SignatureLattice lat = SignatureLattice::over(spec.scope(), top);
  auto props = {element_p1_property(spec), element_p2_property(spec),
                element_p3_property(spec)};
  (void)props;
  int checked = 0;
  for (auto code : lat.all(/*include_empty=*/false)) {
    Signature sig = lat.decode(code);
    Signature gac = gac_signature(spec, sig);
    bool gac_failed = !gac.nonempty();
    // Chase the three propagators to a mutual fixpoint.
    Signature cur = sig;
    bool failed = false;
    for (;;) {
      Signature before = cur;
      for (int which = 0; which < 3 && !failed; ++which) {
        PropagatorOutcome out =
            which == 0   ? element_p1(spec, cur, SupportSet{})
            : which == 1 ? element_p2(spec, cur)
                         : element_p3(spec, cur);
        if (!out.found)
          failed = true;
        else
          cur = out.narrowed;
      }
      if (failed || cur == before) break;
    }
    CHECK(failed == gac_failed);
    if (!failed) CHECK(cur == gac);
    ++checked;
  }
  CHECK(checked == 343);  // 7^3 nonempty sub-signatures
}
