#include <doctest.h>

#include <set>

#include "feyn/enumerate.hpp"
#include "feyn/iso.hpp"

using namespace feyn;

namespace {

ColourTable table(bool quartic, bool cubic) {
  ColourTable t;
  if (quartic) {
    t.add("g4", {VertexKind::symmetric, 0, 4}, false);
    t.add("g4*", {VertexKind::symmetric, 0, 4}, true);
    t.set_bold("g4", "g4*");
  }
  if (cubic) {
    t.add("g3", {VertexKind::symmetric, 0, 3}, false);
    t.add("g3*", {VertexKind::symmetric, 0, 3}, true);
    t.set_bold("g3", "g3*");
  }
  return t;
}

}  // namespace

TEST_CASE("quartic vacuum diagrams up to degree 8") {
  const auto e = enumerate_closed(table(true, false), std::nullopt, 8);
  // empty, figure eight, then three two-vertex classes and the disjoint pair
  REQUIRE(e.entries.size() == 5);
  CHECK(e.entries[0].degree == 0);
  CHECK(e.entries[1].degree == 4);
  CHECK(e.entries[1].code.aut_order == 8);
  std::multiset<std::uint64_t> auts;
  for (std::size_t i = 2; i < e.entries.size(); ++i) {
    CHECK(e.entries[i].degree == 8);
    auts.insert(e.entries[i].code.aut_order);
  }
  CHECK(auts == std::multiset<std::uint64_t>{16, 48, 128});
}

TEST_CASE("entries are distinct, sorted and agree with their representatives") {
  const auto e = enumerate_closed(table(true, true), std::nullopt, 10);
  for (std::size_t i = 0; i < e.entries.size(); ++i) {
    const auto& x = e.entries[i];
    CHECK(canonical_code(x.representative) == x.code);
    CHECK(degree(x.representative) == x.degree);
    CHECK(x.representative.leg_count() == 0);
    if (i) {
      const auto& p = e.entries[i - 1];
      CHECK((p.degree < x.degree || (p.degree == x.degree && p.code < x.code)));
    }
  }
}

TEST_CASE("connected and reduced filters") {
  const ColourTable t = table(true, true);
  const auto all = enumerate_closed(t, std::nullopt, 10);
  const auto conn = enumerate_closed(t, std::nullopt, 10, {true, false});
  std::size_t c = 0;
  for (const auto& x : all.entries) c += component_count(x.representative) == 1;
  CHECK(c == conn.entries.size());

  const Diagram root = star(VertexKind::symmetric, "g4*", 4, true);
  const auto full = enumerate_closed(t, root, 8);
  const auto red = enumerate_closed(t, root, 8, {false, true});
  CHECK(red.entries.size() < full.entries.size());
  for (const auto& x : red.entries) CHECK(component_count(x.representative) == 1);
}

TEST_CASE("vertex cap") {
  const ColourTable t = table(true, false);
  const auto e = enumerate_closed(t, std::nullopt, 12, {false, false, 2});
  for (const auto& x : e.entries) CHECK(x.representative.vertices().size() <= 2);
  CHECK(e.entries.size() == 5);
}

TEST_CASE("open diagrams: typed classes are untyped classes times numberings") {
  const ColourTable t = table(true, true);
  for (int legs = 0; legs <= 3; ++legs) {
    const int d = 8 - legs;
    const auto untyped = enumerate_open(t, legs, d, false, false, 3);
    const auto typed = enumerate_open(t, legs, d, true, false, 3);
    Rational lhs = 0, rhs = 0;
    for (const auto& x : untyped) lhs += Rational(1, x.code.aut_order);
    for (const auto& x : typed) rhs += Rational(1, x.code.aut_order);
    Rational fact = 1;
    for (int k = 2; k <= legs; ++k) fact *= k;
    CHECK(rhs == lhs * fact);
  }
}

TEST_CASE("exp-log and symmetric powers") {
  for (auto [q, c] : {std::pair{true, false}, std::pair{false, true}, std::pair{true, true}}) {
    const ColourTable t = table(q, c);
    const auto full = enumerate_closed(t, std::nullopt, 12);
    const auto conn = enumerate_closed(t, std::nullopt, 12, {true, false});
    const RationalSeries Z = groupoid_integral(full), F = groupoid_integral(conn);
    CHECK(exp(F) == Z);
    CHECK(log(Z) == F);
    CHECK(symmetric_power_check(full, conn).ok);
  }
}

TEST_CASE("counting series values") {
  const ColourTable t = table(true, false);
  const RationalSeries Z = groupoid_integral(enumerate_closed(t, std::nullopt, 12));
  const VariableKey x{VertexKind::symmetric, 0, 4, "g4"};
  CHECK(Z.coefficient({{x, 1}}) == Rational(1, 8));
  CHECK(Z.coefficient({{x, 2}}) == Rational(35, 384));
  CHECK(Z.coefficient({{x, 3}}) == Rational(385, 3072));

  const ColourTable ct = table(false, true);
  const RationalSeries Zc = groupoid_integral(enumerate_closed(ct, std::nullopt, 12));
  const VariableKey y{VertexKind::symmetric, 0, 3, "g3"};
  CHECK(Zc.coefficient({{y, 2}}) == Rational(5, 24));
  CHECK(Zc.coefficient({{y, 4}}) == Rational(385, 1152));
}

TEST_CASE("degree limit") {
  CHECK_THROWS(enumerate_closed(table(true, false), std::nullopt, kMaxDegreeLimit + 1));
}
