#include <doctest.h>

#include "feyn/coverings.hpp"
#include "feyn/iso.hpp"
#include "feyn/prop.hpp"
#include "feyn/verify.hpp"

using namespace feyn;

namespace {

ColourTable mixed() {
  ColourTable t;
  t.add("g3", {VertexKind::symmetric, 0, 3}, false);
  t.add("g3*", {VertexKind::symmetric, 0, 3}, true);
  t.set_bold("g3", "g3*");
  t.add("g4", {VertexKind::symmetric, 0, 4}, false);
  t.add("g4*", {VertexKind::symmetric, 0, 4}, true);
  t.set_bold("g4", "g4*");
  t.add("c3", {VertexKind::cyclic, 0, 3}, false);
  t.add("c3*", {VertexKind::cyclic, 0, 3}, true);
  t.set_bold("c3", "c3*");
  return t;
}

void check_report(const CoveringReport& r) {
  CAPTURE(r.name);
  CAPTURE(r.message);
  CHECK(r.fibres_ok);
  CHECK(r.cardinality_ok);
  CHECK(r.classes_ok);
  CHECK(r.push_ok);
  CHECK(r.pullback_ok());
  CHECK(r.fubini_ok());
  CHECK(r.pushpull_ok());
  CHECK(r.base_classes > 0);
}

}  // namespace

TEST_CASE("forget-numbering coverings have degree (m+n)!") {
  const ColourTable t = mixed();
  for (int legs = 0; legs <= 3; ++legs) {
    std::uint64_t fact = 1;
    for (int k = 2; k <= legs; ++k) fact *= k;
    for (const auto& r : check_forget_numbering_splits(t, legs, 8 - legs, 3)) {
      check_report(r);
      CHECK(r.degree == fact);
    }
  }
}

TEST_CASE("composition covering over special stars") {
  const ColourTable t = mixed();
  const Diagram g4 = star(VertexKind::symmetric, "g4*", 4, true);
  const auto r = check_composition(t, g4, 8, 3);
  check_report(r);
  CHECK(r.degree == 24);
  const auto c = check_composition(t, star(VertexKind::cyclic, "c3*", 3, true), 9, 3);
  check_report(c);
  CHECK(c.degree == 6);
}

TEST_CASE("cutting along the root recovers the root") {
  const Diagram g = star(VertexKind::symmetric, "g4*", 4, true);
  const ColourTable t = mixed();
  RawDiagram raw;
  raw.vertices.push_back({VertexKind::symmetric, "g4*", 0, {0, 1, 2, 3}, true});
  raw.vertices.push_back({VertexKind::symmetric, "g4", 0, {4, 5, 6, 7}});
  raw.matching = {{0, 4}, {4, 0}, {1, 5}, {5, 1}, {2, 6}, {6, 2}, {3, 7}, {7, 3}};
  const Cut cut = cut_along_root(build_diagram(raw, t));
  CHECK(are_isomorphic(unmark(cut.root), g));
  CHECK(cut.rest.leg_count() == 4);
  CHECK(degree(cut.rest) == 4);
}

TEST_CASE("edge-colouring covering") {
  const ColourTable t = mixed();
  const AlgebraSpec a = sample_algebra(t, 2, 7);
  check_report(check_edge_colouring(a, t, 8, 3));
}

TEST_CASE("verify_fubini runs every covering") {
  ColourTable t;
  t.add("g4", {VertexKind::symmetric, 0, 4}, false);
  t.add("g4*", {VertexKind::symmetric, 0, 4}, true);
  t.set_bold("g4", "g4*");
  const auto r = verify_fubini(t, nullptr, 8, 3);
  CHECK(r.pass);
  CHECK(r.text.find("FAIL") == std::string::npos);
}
