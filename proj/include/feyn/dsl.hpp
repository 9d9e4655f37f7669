#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "feyn/algebra.hpp"
#include "feyn/colour_table.hpp"
#include "feyn/diagram.hpp"
#include "feyn/enumerate.hpp"

namespace feyn {

// Diagram description language:
//
//   type (m,n)                              optional; makes the diagram typed
//   vertex ID sym|cyc|coupon(m,n) COLOUR legs K [root];
//   edge ID.s - ID.s [tag T] [root];
//   wire ID;                                bare edge with ends ID.1, ID.2
//   in k = ID.s;   out k = ID.s;            typed diagrams only
//
// Slots and in/out indices are 1-based; '#' starts a comment. In untyped
// diagrams every slot not used by an edge is a leg; in typed ones every
// slot and wire end must be accounted for.
struct ParsedDiagram {
  Diagram diagram;
  bool typed = false;
  std::vector<int> inputs;   // endpoint indices, typed only
  std::vector<int> outputs;

  TypedDiagram as_typed() const { return TypedDiagram(diagram, inputs, outputs); }
};

ParsedDiagram parse_diagram(std::string_view text, const ColourTable& table);

// One statement per line. Throws when a leg or bare edge carries a tag,
// which the language cannot express.
std::string serialize(const Diagram& d);
std::string serialize(const TypedDiagram& t);
// Same statements joined by single spaces.
std::string serialize_line(const Diagram& d);
std::string serialize_line(const TypedDiagram& t);

// Sectioned colour table:
//
//   [symmetric]            also [cyclic] and [coupon]
//   4 g4 ordinary g4*      valence, name, kind of colour, optional partner
//   1,1 h ordinary         coupon valence is inputs,outputs
//
// An ordinary colour whose partner is not declared gets one named NAME*.
ColourTable parse_table(std::string_view text);

// JSON algebra file: {"dim", "pairing" (row-major or "identity"),
// "tensors": {name: {"kind", "valence" | "inputs"+"outputs",
// "entries" | "constant"}}, "bold"}. Entries are numbers or "p/q"
// strings; the algebra is exact when none of them is a non-integer number.
AlgebraSpec parse_algebra(std::string_view text);

std::string read_file(const std::string& path);

// Enumeration as TSV rows "degree  aut  code  diagram", sorted.
std::string render_enumeration(const Enumeration& e);
std::string render_enumeration_json(const Enumeration& e);

}  // namespace feyn
