#include <doctest.h>

#include "gensup/propagators.hpp"

using namespace gensup;

namespace {

const VarId y{"y"}, z{"z"};
const VarId x0{"x0"}, x1{"x1"}, x2{"x2"};

ElementSpec element1() { return ElementSpec{Schema{x0}, y, z}; }
ElementSpec element3() { return ElementSpec{Schema{x0, x1, x2}, y, z}; }

Signature element_sig(Domain d0, Domain dy, Domain dz) {
  Signature s;
  s.set(x0, std::move(d0)).set(y, std::move(dy)).set(z, std::move(dz));
  return s;
}

}  // namespace

TEST_CASE("element p1: wide index domain watches min and max") {
  ElementSpec spec = element3();
  Signature s;
  s.set(x0, {1}).set(x1, {1}).set(x2, {1}).set(y, {0, 2}).set(z, {1});
  PropagatorOutcome out = element_p1(spec, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.narrowed == s);
  CHECK(out.support == SupportSet::literals({{3, 0}, {3, 2}}));
}

TEST_CASE("element p1: forced index intersects the vector variable with z") {
  ElementSpec spec = element1();
  Signature s = element_sig({1, 2, 3}, {0}, {2, 3, 4});
  PropagatorOutcome out = element_p1(spec, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.narrowed.at(x0) == Domain{2, 3});
  CHECK(out.narrowed.at(z) == Domain{2, 3, 4});
  CHECK(out.support == SupportSet::literals({{2, 2}, {2, 3}}));
}

TEST_CASE("element p1: empty intersection means no support") {
  ElementSpec spec = element1();
  CHECK_FALSE(element_p1(spec, element_sig({1}, {0}, {2}), SupportSet{}).found);
  // An index outside the vector cannot be supported either.
  CHECK_FALSE(element_p1(spec, element_sig({1}, {5}, {1}), SupportSet{}).found);
}

TEST_CASE("element p2 prunes unsupported indices") {
  ElementSpec spec{Schema{x0, x1}, y, z};
  Signature s;
  s.set(x0, {1}).set(x1, {2}).set(y, {0, 1}).set(z, {2});
  PropagatorOutcome out = element_p2(spec, s);
  REQUIRE(out.found);
  CHECK(out.narrowed.at(y) == Domain{1});
  CHECK(out.support == SupportSet::literals({{1, 2}, {3, 2}}));
}

TEST_CASE("element p2 without pruning and with wipeout") {
  ElementSpec spec{Schema{x0, x1}, y, z};
  Signature fine;
  fine.set(x0, {1, 2}).set(x1, {2}).set(y, {0, 1}).set(z, {1, 2});
  PropagatorOutcome out = element_p2(spec, fine);
  REQUIRE(out.found);
  CHECK(out.narrowed == fine);
  Signature bad;
  bad.set(x0, {1}).set(x1, {1}).set(y, {0, 1}).set(z, {2});
  CHECK_FALSE(element_p2(spec, bad).found);
}

TEST_CASE("element p3 prunes unreachable result values") {
  ElementSpec spec = element1();
  Signature s = element_sig({1, 2}, {0}, {1, 9});
  PropagatorOutcome out = element_p3(spec, s);
  REQUIRE(out.found);
  CHECK(out.narrowed.at(z) == Domain{1});
  CHECK(out.support == SupportSet::literals({{0, 1}, {1, 0}}));
  Signature fine = element_sig({1, 2}, {0}, {1, 2});
  CHECK(element_p3(spec, fine).narrowed == fine);
  CHECK_FALSE(element_p3(spec, element_sig({1, 2}, {0}, {8, 9})).found);
}

TEST_CASE("occurrence leq: plenty of capable indices, no pruning") {
  OccurrenceLeqSpec spec{Schema{x0, x1, x2}, 1, 1};
  Signature s;
  s.set(x0, {1, 2}).set(x1, {1, 2}).set(x2, {1, 2});
  PropagatorOutcome out = occurrence_leq(spec, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.narrowed == s);
  CHECK(out.support == SupportSet::literals({{0, 2}, {1, 2}, {2, 2}}));
}

TEST_CASE("occurrence leq: equality case prunes the value everywhere") {
  OccurrenceLeqSpec spec{Schema{x0, x1, x2}, 1, 1};
  Signature s;
  s.set(x0, {1}).set(x1, {1, 2}).set(x2, {1, 2});
  PropagatorOutcome out = occurrence_leq(spec, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.support.empty());
  CHECK(out.narrowed.at(x0) == Domain{1});
  CHECK(out.narrowed.at(x1) == Domain{2});
  CHECK(out.narrowed.at(x2) == Domain{2});
}

TEST_CASE("occurrence leq: too many forced occurrences fail") {
  OccurrenceLeqSpec spec{Schema{x0, x1, x2}, 1, 1};
  Signature s;
  s.set(x0, {1}).set(x1, {1}).set(x2, {1, 2});
  CHECK_FALSE(occurrence_leq(spec, s, SupportSet{}).found);
}

TEST_CASE("occurrence leq re-uses surviving support indices first") {
  OccurrenceLeqSpec spec{Schema{x0, x1, x2}, 1, 2};  // needs 2 literals
  Signature s;
  s.set(x0, {1, 2}).set(x1, {1, 2}).set(x2, {1, 2});
  // The old support pointed at index 2 and a dead literal on index 0.
  SupportSet lost = SupportSet::literals({{2, 2}, {0, 3}});
  PropagatorOutcome out = occurrence_leq(spec, s, lost);
  REQUIRE(out.found);
  CHECK(out.support == SupportSet::literals({{2, 2}, {0, 2}}));
}

TEST_CASE("occurrence leq tautology and contradiction bounds") {
  Schema xs{x0, x1};
  Signature s;
  s.set(x0, {1, 2}).set(x1, {1, 2});
  // Bound at or above the arity: always satisfied, empty support.
  PropagatorOutcome out =
      occurrence_leq(OccurrenceLeqSpec{xs, 1, 2}, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.support.empty());
  CHECK(out.narrowed == s);
  out = occurrence_leq(OccurrenceLeqSpec{xs, 1, 7}, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.support.empty());
  // Negative bound: unsatisfiable.
  CHECK_FALSE(occurrence_leq(OccurrenceLeqSpec{xs, 1, -1}, s, SupportSet{}).found);
}

TEST_CASE("occurrence geq: support without pruning") {
  OccurrenceGeqSpec spec{Schema{x0, x1}, 1, 1};
  Signature s;
  s.set(x0, {1, 2}).set(x1, {1, 2});
  PropagatorOutcome out = occurrence_geq(spec, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.narrowed == s);
  CHECK(out.support == SupportSet::literals({{0, 1}, {1, 1}}));
}

TEST_CASE("occurrence geq: equality pins every capable variable") {
  OccurrenceGeqSpec spec{Schema{x0, x1}, 1, 2};
  Signature s;
  s.set(x0, {1, 2}).set(x1, {1, 2});
  PropagatorOutcome out = occurrence_geq(spec, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(out.support.empty());
  CHECK(out.narrowed.at(x0) == Domain{1});
  CHECK(out.narrowed.at(x1) == Domain{1});
}

TEST_CASE("occurrence geq: unreachable count fails") {
  OccurrenceGeqSpec spec{Schema{x0}, 1, 2};
  Signature s;
  s.set(x0, {1, 2});
  CHECK_FALSE(occurrence_geq(spec, s, SupportSet{}).found);
}

TEST_CASE("diseq propagation") {
  DiseqSpec spec{x0, x1};
  Signature s;
  s.set(x0, {1}).set(x1, {1, 2});
  PropagatorOutcome out = diseq_step(spec, s);
  REQUIRE(out.found);
  CHECK(out.narrowed.at(x1) == Domain{2});

  Signature clash;
  clash.set(x0, {1}).set(x1, {1});
  CHECK_FALSE(diseq_step(spec, clash).found);

  Signature open;
  open.set(x0, {1, 2}).set(x1, {1, 2});
  out = diseq_step(spec, open);
  REQUIRE(out.found);
  CHECK(out.narrowed == open);
  CHECK(out.support.size() == 2);
}

TEST_CASE("element properties hold on the supports their propagators emit") {
  ElementSpec spec = element1();
  Signature s = element_sig({1, 2, 3}, {0}, {2, 3, 4});
  SupportProperty p1 = element_p1_property(spec);
  PropagatorOutcome out = element_p1(spec, s, SupportSet{});
  REQUIRE(out.found);
  CHECK(holds(p1, out.narrowed, out.support));
  CHECK(out.support.valid(p1.scope, out.narrowed));

  SupportProperty p2 = element_p2_property(spec);
  out = element_p2(spec, s);
  REQUIRE(out.found);
  CHECK(holds(p2, out.narrowed, out.support));

  SupportProperty p3 = element_p3_property(spec);
  out = element_p3(spec, s);
  REQUIRE(out.found);
  CHECK(holds(p3, out.narrowed, out.support));
}

TEST_CASE("element properties are p-admissible on a small lattice") {
  ElementSpec spec = element1();
  Signature top = element_sig({0, 1, 2}, {0, 1, 2}, {0, 1, 2});
  auto universe = literal_universe(spec.scope(), top);
  CHECK_FALSE(p_admissible_check(element_p1_property(spec), top, universe).found());
  CHECK_FALSE(p_admissible_check(element_p2_property(spec), top, universe).found());
  CHECK_FALSE(p_admissible_check(element_p3_property(spec), top, universe).found());
}

TEST_CASE("element properties are not backtrack stable") {
  ElementSpec spec{Schema{x0, x1}, y, z};
  Signature top;
  top.set(x0, {0, 1}).set(x1, {0, 1}).set(y, {0, 1}).set(z, {0, 1});
  auto universe = literal_universe(spec.scope(), top);
  CHECK(backtrack_stable_check(element_p1_property(spec), top, universe).found());
  CHECK(backtrack_stable_check(element_p2_property(spec), top, universe).found());
  CHECK(backtrack_stable_check(element_p3_property(spec), top, universe).found());
}

TEST_CASE("occurrence properties are p-admissible and backtrack stable") {
  Schema xs{x0, x1, x2};
  Signature top;
  top.set(x0, {1, 2, 3}).set(x1, {1, 2, 3}).set(x2, {1, 2, 3});
  auto universe = literal_universe(xs, top);
  SupportProperty pl = occurrence_leq_property(OccurrenceLeqSpec{xs, 1, 1});
  SupportProperty pg = occurrence_geq_property(OccurrenceGeqSpec{xs, 1, 1});
  CHECK_FALSE(p_admissible_check(pl, top, universe).found());
  CHECK_FALSE(p_admissible_check(pg, top, universe).found());
  CHECK_FALSE(backtrack_stable_check(pl, top, universe).found());
  CHECK_FALSE(backtrack_stable_check(pg, top, universe).found());
}
