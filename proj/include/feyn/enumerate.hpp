#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "feyn/colour_table.hpp"
#include "feyn/diagram.hpp"
#include "feyn/iso.hpp"
#include "feyn/series.hpp"

namespace feyn {

inline constexpr int kDefaultMaxDegree = 12;
inline constexpr int kMaxDegreeLimit = 16;

struct EnumFlags {
  bool connected = false;  // exactly one connected component
  bool reduced = false;    // every component meets the root
  int max_vertices = -1;   // bound on the vertex count including the root, -1 for none
};

struct EnumEntry {
  CanonicalCode code;
  Diagram representative;
  int degree = 0;
};

struct Enumeration {
  std::vector<EnumEntry> entries;  // sorted by (degree, code)
  int max_degree = 0;
  std::optional<Diagram> root;
  EnumFlags flags;
};

// Iso-classes of closed diagrams made of the root (marked, so that
// isomorphisms must carry it to itself) and ordinary vertices of the table,
// with degree at most max_degree. The root must not contain bare edges.
Enumeration enumerate_closed(const ColourTable& table, const std::optional<Diagram>& root,
                             int max_degree, EnumFlags flags = {});

struct OpenEntry {
  CanonicalCode code;
  TypedDiagram representative;  // outputs numbered in endpoint order
  int degree = 0;
};

// Diagrams with `legs` output endpoints and ordinary vertices only, degree at
// most max_degree. With typed = true classes keep the output numbering.
std::vector<OpenEntry> enumerate_open(const ColourTable& table, int legs, int max_degree,
                                      bool typed, bool connected = false, int max_vertices = -1);

// Sum over the classes of weight(representative) x^monomial / |Aut|, with
// weight 1 when none is given.
RationalSeries groupoid_integral(const Enumeration& e,
                                 const std::function<Rational(const Diagram&)>& weight = {});

struct PowerCheck {
  bool ok = true;
  std::string message;
};

// Every class of `full` must factor as a multiset of classes of
// `connected` with the product formula for |Aut|, and every such multiset
// within the degree bound must occur exactly once.
PowerCheck symmetric_power_check(const Enumeration& full, const Enumeration& connected);

}  // namespace feyn
