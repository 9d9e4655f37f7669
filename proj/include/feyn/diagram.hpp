#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "feyn/colour_table.hpp"

namespace feyn {

using HalfEdge = int;

// Edge decoration reserved for internal edges of a distinguished sub-diagram.
inline constexpr int kRootEdgeTag = 1 << 20;

struct Vertex {
  VertexKind kind = VertexKind::symmetric;
  std::string colour;
  bool special = false;
  // Member of the distinguished sub-diagram; isomorphisms preserve the flag.
  bool root = false;
  // Coupon vertices: slots[0, inputs) are In(v), the rest Out(v).
  int inputs = 0;
  std::vector<HalfEdge> slots;

  int valence() const { return static_cast<int>(slots.size()); }
  ColourShape shape() const;
};

// Where a half-edge lives: a vertex slot, or an endpoint (a leg).
struct Owner {
  bool is_endpoint = false;
  int index = -1;  // vertex index or endpoint index
  int slot = -1;   // slot position for vertex half-edges
};

// A Feynman diagram in half-edge form. Every half-edge id in [0, H) is used
// exactly once, either as a vertex slot or as an endpoint. The matching is a
// fixed-point-free involution on all half-edges; a vertex slot matched to an
// endpoint half-edge is a leg, two matched endpoint half-edges form a bare
// edge. Values are immutable once constructed.
class Diagram {
 public:
  Diagram() = default;
  // Validates all invariants and throws feyn::Error on violation. Cyclic
  // slot lists are rotated so that the smallest half-edge id comes first.
  Diagram(std::vector<Vertex> vertices, std::vector<HalfEdge> endpoints,
          std::vector<HalfEdge> mate, std::vector<int> tags = {});

  const std::vector<Vertex>& vertices() const { return vertices_; }
  // Half-edge id of each endpoint, in endpoint order.
  const std::vector<HalfEdge>& endpoints() const { return endpoints_; }
  const std::vector<HalfEdge>& mates() const { return mate_; }
  const std::vector<int>& tags() const { return tag_; }

  HalfEdge mate(HalfEdge h) const { return mate_[h]; }
  int tag(HalfEdge h) const { return tag_[h]; }
  const Owner& owner(HalfEdge h) const { return owner_[h]; }
  bool is_endpoint(HalfEdge h) const { return owner_[h].is_endpoint; }

  std::size_t half_edge_count() const { return mate_.size(); }
  std::size_t leg_count() const { return endpoints_.size(); }
  // Matched pairs {h, mate(h)} with h < mate(h), including legs and bare edges.
  std::vector<std::pair<HalfEdge, HalfEdge>> edges() const;
  bool empty() const { return vertices_.empty() && endpoints_.empty(); }

 private:
  std::vector<Vertex> vertices_;
  std::vector<HalfEdge> endpoints_;
  std::vector<HalfEdge> mate_;
  std::vector<int> tag_;
  std::vector<Owner> owner_;
};

// A diagram with numbered inputs and outputs: a morphism Src -> Tgt of the
// PROP. in_order[k] and out_order[k] are endpoint indices of the base.
class TypedDiagram {
 public:
  TypedDiagram() = default;
  TypedDiagram(Diagram base, std::vector<int> in_order, std::vector<int> out_order);

  const Diagram& base() const { return base_; }
  const std::vector<int>& inputs() const { return in_; }
  const std::vector<int>& outputs() const { return out_; }
  int source() const { return static_cast<int>(in_.size()); }
  int target() const { return static_cast<int>(out_.size()); }

 private:
  Diagram base_;
  std::vector<int> in_;
  std::vector<int> out_;
};

// Raw description used by build_diagram. Half-edge ids are arbitrary
// non-negative integers; every vertex slot not matched is a leg.
struct RawVertex {
  VertexKind kind = VertexKind::symmetric;
  std::string colour;
  int inputs = 0;
  std::vector<int> slots;
  bool root = false;
};

struct RawDiagram {
  std::vector<RawVertex> vertices;
  // Directed pairs h -> matching(h); must be an involution.
  std::map<int, int> matching;
  std::map<int, int> tags;  // optional, keyed by either end of an edge
  int bare_edges = 0;
};

// Validates colours against the table and assembles a Diagram. Legs are
// created for unmatched slots in (vertex, slot) order, followed by the
// endpoints of bare edges.
Diagram build_diagram(const RawDiagram& raw, const ColourTable& table);

// Sum of valences of ordinary vertices.
int degree(const Diagram& d);

std::vector<Diagram> connected_components(const Diagram& d);
std::size_t component_count(const Diagram& d);

TypedDiagram make_typed(const Diagram& d, int inputs);
Diagram forget_numbering(const TypedDiagram& t);

// Disjoint union; endpoints of b follow those of a.
Diagram disjoint_union(const Diagram& a, const Diagram& b);

// Copy with half-edge ids permuted by perm (perm[old] = new) and vertices
// reordered by vertex_perm (vertex_perm[old] = new). Used to test
// relabelling invariance.
Diagram relabel(const Diagram& d, std::span<const int> perm, std::span<const int> vertex_perm);

// Copy with every vertex flagged as root and internal vertex-vertex edges
// tagged kRootEdgeTag.
Diagram mark_as_root(const Diagram& d);
// Copy with all root flags and root edge tags cleared.
Diagram unmark(const Diagram& d);

// Single vertex with all slots as legs.
Diagram star(VertexKind kind, const std::string& colour, int valence, bool special,
             int inputs = 0);

}  // namespace feyn
