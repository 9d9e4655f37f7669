#include <doctest.h>

#include "feyn/iso.hpp"
#include "feyn/prop.hpp"
#include "support.hpp"

using namespace feyn;

TEST_CASE("canonical aut order matches brute force on random diagrams") {
  std::mt19937 rng(1);
  int checked = 0;
  for (int it = 0; it < 3000; ++it) {
    const Diagram d = testing::random_diagram(rng);
    REQUIRE(d.half_edge_count() <= 16);
    CHECK(canonical_code(d).aut_order == aut_order_bruteforce(d));
    ++checked;
  }
  CHECK(checked == 3000);
}

TEST_CASE("canonical code does not depend on labels") {
  std::mt19937 rng(2);
  for (int it = 0; it < 1000; ++it) {
    const Diagram d = testing::random_diagram(rng);
    const Diagram e = testing::shuffle_labels(d, rng);
    CHECK(canonical_code(e).code == canonical_code(d).code);
    CHECK(are_isomorphic(d, e));
  }
}

TEST_CASE("equal codes exactly when brute-force isomorphic") {
  std::mt19937 rng(7);
  std::vector<Diagram> ds;
  for (int it = 0; it < 300; ++it) ds.push_back(testing::random_diagram(rng, 8));
  int same = 0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      if (ds[i].half_edge_count() != ds[j].half_edge_count()) continue;
      const bool c = canonical_code(ds[i]) == canonical_code(ds[j]);
      same += c;
      CHECK(c == are_isomorphic_bruteforce(ds[i], ds[j]));
    }
  CHECK(same > 0);
}

TEST_CASE("known automorphism orders") {
  // figure eight on one quartic vertex: 2 * 2 * 2
  RawDiagram r;
  r.vertices.push_back({VertexKind::symmetric, "g", 0, {0, 1, 2, 3}});
  r.matching = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  CHECK(canonical_code(build_diagram(r, ColourTable::open())).aut_order == 8);

  // theta: two cubic vertices with three parallel edges
  RawDiagram th;
  th.vertices.push_back({VertexKind::symmetric, "g", 0, {0, 1, 2}});
  th.vertices.push_back({VertexKind::symmetric, "g", 0, {3, 4, 5}});
  th.matching = {{0, 3}, {3, 0}, {1, 4}, {4, 1}, {2, 5}, {5, 2}};
  CHECK(canonical_code(build_diagram(th, ColourTable::open())).aut_order == 12);

  // cyclic theta keeps only rotations and the swap that reverses none
  for (auto& v : th.vertices) v.kind = VertexKind::cyclic;
  const Diagram ct = build_diagram(th, ColourTable::open());
  CHECK(canonical_code(ct).aut_order == aut_order_bruteforce(ct));

  const Diagram s4 = star(VertexKind::symmetric, "g", 4, false);
  CHECK(canonical_code(s4).aut_order == 24);
  CHECK(canonical_code(make_typed(s4, 0)).aut_order == 1);
  CHECK(canonical_code(star(VertexKind::cyclic, "c", 4, false)).aut_order == 4);
  CHECK(canonical_code(Diagram()).aut_order == 1);
}

TEST_CASE("typed bare edge has trivial automorphisms, untyped has two") {
  const TypedDiagram id = identity(1);
  CHECK(canonical_code(id).aut_order == 1);
  CHECK(canonical_code(id.base()).aut_order == 2);
  CHECK(aut_order_bruteforce(id.base()) == 2);
}

TEST_CASE("typed iso respects numbering") {
  const TypedDiagram b = braiding(1, 1);
  CHECK_FALSE(are_isomorphic(b, identity(2)));
  CHECK(are_isomorphic(forget_numbering(b), forget_numbering(identity(2))));
  CHECK(are_isomorphic(compose(b, b), identity(2)));
}

TEST_CASE("tags distinguish otherwise equal diagrams") {
  RawDiagram r;
  r.vertices.push_back({VertexKind::symmetric, "g", 0, {0, 1, 2, 3}});
  r.matching = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  const Diagram plain = build_diagram(r, ColourTable::open());
  r.tags = {{0, 1}};
  const Diagram tagged = build_diagram(r, ColourTable::open());
  CHECK_FALSE(are_isomorphic(plain, tagged));
  CHECK(canonical_code(tagged).aut_order == 4);
  CHECK(aut_order_bruteforce(tagged) == 4);
}

TEST_CASE("hex code is lowercase and even length") {
  const std::string h = canonical_code(star(VertexKind::cyclic, "c", 3, false)).hex();
  CHECK(h.size() % 2 == 0);
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
}
