#include <doctest.h>

#include <algorithm>

#include "feyn/dsl.hpp"
#include "feyn/enumerate.hpp"
#include "feyn/error.hpp"
#include "feyn/iso.hpp"
#include "support.hpp"

using namespace feyn;

namespace {

std::string data(const std::string& f) { return read_file(std::string(FEYN_DATA_DIR "/") + f); }

std::string error_of(std::string_view text, const ColourTable& t) {
  try {
    parse_diagram(text, t);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("theta from file") {
  const ColourTable t = parse_table(data("mixed.tbl"));
  const ParsedDiagram p = parse_diagram(data("theta.fd"), t);
  CHECK_FALSE(p.typed);
  CHECK(p.diagram.vertices().size() == 2);
  CHECK(canonical_code(p.diagram).aut_order == 12);
}

TEST_CASE("typed wire") {
  const ParsedDiagram p = parse_diagram(data("e02.fd"), parse_table(data("quartic.tbl")));
  CHECK(p.typed);
  CHECK(p.as_typed().source() == 0);
  CHECK(p.as_typed().target() == 2);
  CHECK(canonical_code(p.as_typed()).aut_order == 1);
}

TEST_CASE("serialize and parse round-trip random diagrams") {
  std::mt19937 rng(31);
  const ColourTable open = ColourTable::open();
  for (int it = 0; it < 300; ++it) {
    Diagram d = testing::random_diagram(rng);
    bool tagged = false;
    for (HalfEdge h = 0; h < static_cast<HalfEdge>(d.half_edge_count()); ++h) tagged |= d.tag(h) != 0;
    if (tagged) continue;
    const std::string text = serialize(d);
    const ParsedDiagram p = parse_diagram(text, open);
    CHECK(are_isomorphic(p.diagram, d));
    CHECK(serialize(p.diagram) == text);
  }
}

TEST_CASE("typed round-trip keeps the numbering") {
  const ColourTable t = parse_table(data("mixed.tbl"));
  for (const auto& e : enumerate_open(t, 3, 6, true)) {
    const ParsedDiagram p = parse_diagram(serialize(e.representative), t);
    CHECK(canonical_code(p.as_typed()) == e.code);
    CHECK(serialize_line(p.as_typed()) == serialize_line(e.representative));
  }
}

TEST_CASE("errors carry line and column") {
  const ColourTable q = parse_table(data("quartic.tbl"));
  CHECK(error_of("vertex a sym g4 legs 4; edge a.1-a.9;", q).find("line 1") != std::string::npos);
  CHECK(error_of("vertex a sym g4 legs 4; edge a.1-a.9;", q).find("out of range") != std::string::npos);
  const std::string e2 = error_of("vertex a sym g4 legs 4;\n edge a.1 a.2;", q);
  CHECK(e2.find("line 2, column 11") != std::string::npos);
  CHECK(error_of("vertex a sym g5 legs 4;", q) != "");
  CHECK(error_of("vertex a sym g4 legs 3;", q) != "");
  CHECK(error_of("vertex a sym g4 legs 4; edge a.1-a.2; edge a.2-a.3;", q).find("used twice") !=
        std::string::npos);
  CHECK(error_of("type (0,1) vertex a sym g4 legs 4; out 1 = a.1; out 1 = a.2;", q).find("duplicate") !=
        std::string::npos);
  CHECK(error_of("vertex a sym g4 legs 4; out 1 = a.1;", q).find("type") != std::string::npos);
  CHECK(error_of("vertex a sym g4 legs 4; vertex a sym g4 legs 4;", q) != "");
  CHECK(error_of("vertex a sym g4 legs 4 edge", q) != "");
  CHECK(error_of("vertex a sym g4 legs 4; @", q).find("unexpected character") != std::string::npos);
}

TEST_CASE("tables") {
  const ColourTable t = parse_table("[symmetric]\n4 g ordinary\n[cyclic]\n3 c ordinary c!\n3 c! special\n"
                                    "[coupon]\n1,2 k ordinary\n");
  CHECK(t.find("g*") != nullptr);
  CHECK(t.find("g*")->special);
  CHECK(t.bold_of("c") == std::optional<std::string>("c!"));
  REQUIRE(t.find("k") != nullptr);
  CHECK(t.find("k")->shape == ColourShape{VertexKind::coupon, 1, 2});
  CHECK_THROWS_AS(parse_table("[symmetric]\nx g ordinary\n"), Error);
  CHECK_THROWS_AS(parse_table("[round]\n3 g ordinary\n"), Error);
  CHECK_THROWS_AS(parse_table("[symmetric]\n3 g sometimes\n"), Error);
}

TEST_CASE("algebras") {
  const AlgebraSpec a = parse_algebra(data("plane.alg"));
  CHECK(a.exact());
  CHECK(a.dim() == 2);
  CHECK(a.pairing<Rational>()[1] == 1);
  CHECK(a.tensor_for("g4").exact->at(0) == Rational(1, 5));
  const AlgebraSpec r = parse_algebra(R"({"dim": 1, "tensors": {"g": {"kind": "sym", "valence": 2, "constant": 0.5}}})");
  CHECK_FALSE(r.exact());
  CHECK(r.tensor_for("g").real[0] == 0.5);
  CHECK_THROWS_AS(parse_algebra("{\"dim\": 0}"), Error);
  CHECK_THROWS_AS(parse_algebra("not json"), Error);
  CHECK_THROWS_AS(parse_algebra(R"({"dim": 2, "pairing": [1, 0, 0]})"), Error);
  CHECK_THROWS_AS(parse_algebra(R"({"dim": 1, "tensors": {"g": {"kind": "round", "valence": 2, "constant": 1}}})"),
                  Error);
  CHECK_THROWS_AS(parse_algebra(R"({"dim": 2, "tensors": {"c": {"kind": "cyc", "valence": 3, "entries": [0,1,0,0,0,0,0,0]}}})"),
                  Error);
}

TEST_CASE("missing files") {
  try {
    read_file(FEYN_DATA_DIR "/missing.fd");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}

TEST_CASE("enumeration rendering") {
  const auto e = enumerate_closed(parse_table(data("quartic.tbl")), std::nullopt, 4);
  const std::string text = render_enumeration(e);
  CHECK(text.rfind("degree\taut\tcode\tdiagram\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  const std::string json = render_enumeration_json(e);
  CHECK(json.find("\"max_degree\"") != std::string::npos);
  CHECK(render_enumeration(e) == text);
}
