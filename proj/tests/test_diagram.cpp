#include <doctest.h>

#include "feyn/colour_table.hpp"
#include "feyn/diagram.hpp"
#include "feyn/error.hpp"
#include "support.hpp"

using namespace feyn;

namespace {

ColourTable quartic() {
  ColourTable t;
  t.add("g4", {VertexKind::symmetric, 0, 4}, false);
  t.add("g4*", {VertexKind::symmetric, 0, 4}, true);
  t.set_bold("g4", "g4*");
  return t;
}

Diagram figure_eight(const ColourTable& t) {
  RawDiagram r;
  r.vertices.push_back({VertexKind::symmetric, "g4", 0, {0, 1, 2, 3}});
  r.matching = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  return build_diagram(r, t);
}

}  // namespace

TEST_CASE("half-edges form a perfect involution") {
  std::mt19937 rng(3);
  for (int it = 0; it < 200; ++it) {
    const Diagram d = testing::random_diagram(rng);
    for (HalfEdge h = 0; h < static_cast<HalfEdge>(d.half_edge_count()); ++h) {
      CHECK(d.mate(h) != h);
      CHECK(d.mate(d.mate(h)) == h);
      CHECK(d.tag(h) == d.tag(d.mate(h)));
    }
  }
}

TEST_CASE("build_diagram fills open slots with legs") {
  const ColourTable t = quartic();
  RawDiagram r;
  r.vertices.push_back({VertexKind::symmetric, "g4", 0, {0, 1, 2, 3}});
  r.matching = {{0, 1}, {1, 0}};
  const Diagram d = build_diagram(r, t);
  CHECK(d.leg_count() == 2);
  CHECK(d.half_edge_count() == 6);
  CHECK(degree(d) == 4);
}

TEST_CASE("degree counts only ordinary vertices") {
  const ColourTable t = quartic();
  CHECK(degree(figure_eight(t)) == 4);
  CHECK(degree(star(VertexKind::symmetric, "g4*", 4, true)) == 0);
  CHECK(degree(star(VertexKind::symmetric, "g4", 4, false)) == 4);
  CHECK(degree(Diagram()) == 0);
}

TEST_CASE("unknown colours and wrong valences are rejected") {
  const ColourTable t = quartic();
  RawDiagram r;
  r.vertices.push_back({VertexKind::symmetric, "g5", 0, {0, 1, 2, 3}});
  CHECK_THROWS_AS(build_diagram(r, t), Error);
  r.vertices[0].colour = "g4";
  r.vertices[0].slots = {0, 1, 2};
  CHECK_THROWS_AS(build_diagram(r, t), Error);
}

TEST_CASE("non-involutive matchings are rejected") {
  std::vector<Vertex> vs(1);
  vs[0].kind = VertexKind::symmetric;
  vs[0].colour = "a";
  vs[0].slots = {0, 1, 2};
  CHECK_THROWS_AS(Diagram(vs, {}, {1, 2, 0}), Error);
  CHECK_THROWS_AS(Diagram(vs, {}, {0, 1, 2}), Error);
}

TEST_CASE("connected components and disjoint union") {
  const ColourTable t = quartic();
  const Diagram e = figure_eight(t);
  const Diagram two = disjoint_union(e, e);
  CHECK(component_count(two) == 2);
  CHECK(degree(two) == 8);
  CHECK(connected_components(two).size() == 2);
  CHECK(component_count(Diagram()) == 0);
}

TEST_CASE("relabelling keeps the shape") {
  std::mt19937 rng(9);
  for (int it = 0; it < 100; ++it) {
    const Diagram d = testing::random_diagram(rng);
    const Diagram e = testing::shuffle_labels(d, rng);
    CHECK(e.half_edge_count() == d.half_edge_count());
    CHECK(e.leg_count() == d.leg_count());
    CHECK(degree(e) == degree(d));
    CHECK(component_count(e) == component_count(d));
  }
}

TEST_CASE("typed diagrams number every leg once") {
  const Diagram s = star(VertexKind::coupon, "k", 4, false, 2);
  const TypedDiagram t = make_typed(s, 2);
  CHECK(t.source() == 2);
  CHECK(t.target() == 2);
  CHECK(forget_numbering(t).leg_count() == 4);
  CHECK_THROWS_AS(TypedDiagram(s, {0, 0}, {1, 2}), Error);
}
