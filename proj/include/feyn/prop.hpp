#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "feyn/diagram.hpp"
#include "feyn/iso.hpp"

namespace feyn {

// g after f: input k of g is glued to output k of f. Throws
// ErrorCode::arity when Src(g) != Tgt(f), and ErrorCode::invalid_argument
// when the gluing would leave a closed loop with no vertex on it.
TypedDiagram compose(const TypedDiagram& g, const TypedDiagram& f);

// Disjoint union; numbers of b are shifted past those of a.
TypedDiagram tensor(const TypedDiagram& a, const TypedDiagram& b);

// sigma_{m,n}: input i (i < m) goes to output n + i, input m + i to output i.
TypedDiagram braiding(int m, int n);
TypedDiagram identity(int n);
TypedDiagram empty_morphism();

// One diagram of type (0, k) per perfect pairing of the k outputs; empty
// for odd k. Ordered by the pairing, smallest unpaired output first.
std::vector<TypedDiagram> edge_pairings(int k);
void for_each_pairing(int k, const std::function<void(const TypedDiagram&)>& visit);

struct ClassEntry {
  Diagram representative;
  CanonicalCode code;
  std::uint64_t multiplicity = 0;
};

// Iso-classes of the closed diagrams obtained by pairing the legs of g,
// with the number of pairings giving each class. Sorted by code.
std::vector<ClassEntry> closures(const Diagram& g);

}  // namespace feyn
