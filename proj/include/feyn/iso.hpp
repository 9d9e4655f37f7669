#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feyn/diagram.hpp"

namespace feyn {

struct CanonicalCode {
  std::vector<std::uint8_t> code;
  std::uint64_t aut_order = 1;

  bool operator==(const CanonicalCode& o) const { return code == o.code; }
  bool operator<(const CanonicalCode& o) const { return code < o.code; }
  std::string hex() const;
};

// Isomorphism-class code and |Aut|. For untyped diagrams endpoints may be
// permuted freely; typed diagrams keep the numbering fixed.
CanonicalCode canonical_code(const Diagram& d);
CanonicalCode canonical_code(const TypedDiagram& t);

// Exhaustive count over vertex bijections and slot maps. Throws
// ErrorCode::limit when the diagram exceeds max_half_edges.
std::uint64_t aut_order_bruteforce(const Diagram& d, int max_half_edges = 16);
std::uint64_t aut_order_bruteforce(const TypedDiagram& t, int max_half_edges = 16);

bool are_isomorphic(const Diagram& a, const Diagram& b);
bool are_isomorphic(const TypedDiagram& a, const TypedDiagram& b);

// Brute-force isomorphism test used as an independent oracle.
bool are_isomorphic_bruteforce(const Diagram& a, const Diagram& b, int max_half_edges = 16);

std::string to_hex(const std::vector<std::uint8_t>& bytes);

}  // namespace feyn
