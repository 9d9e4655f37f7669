#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "feyn/diagram.hpp"

namespace feyn::testing {

// Random diagram with at most max_half_edges half-edges, mixing all three
// vertex kinds, legs, loops, parallel edges and the occasional bare edge.
inline Diagram random_diagram(std::mt19937& rng, int max_half_edges = 16, bool allow_bare = true) {
  std::uniform_int_distribution<int> coin(0, 99);
  RawDiagram raw;
  int used = 0;
  int next_id = 0;
  std::vector<int> slots;
  const int target = std::uniform_int_distribution<int>(1, max_half_edges)(rng);
  while (used < target) {
    const int left = max_half_edges - used;
    const int val = std::uniform_int_distribution<int>(1, std::min(5, left))(rng);
    RawVertex v;
    const int k = coin(rng);
    v.kind = k < 50 ? VertexKind::symmetric : (k < 80 ? VertexKind::cyclic : VertexKind::coupon);
    v.colour = std::string(1, static_cast<char>('a' + coin(rng) % 2));
    if (v.kind == VertexKind::coupon) v.inputs = std::uniform_int_distribution<int>(0, val)(rng);
    v.root = coin(rng) < 10;
    for (int s = 0; s < val; ++s) {
      v.slots.push_back(next_id);
      slots.push_back(next_id++);
    }
    raw.vertices.push_back(v);
    used += val;
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  // Legs cost an extra endpoint half-edge; keep the total within bounds.
  std::size_t i = 0;
  int total = used;
  while (i + 1 < slots.size()) {
    const bool leg = coin(rng) < 25;
    if (leg && total + 1 <= max_half_edges) {
      ++total;
      ++i;
      continue;
    }
    raw.matching[slots[i]] = slots[i + 1];
    raw.matching[slots[i + 1]] = slots[i];
    if (coin(rng) < 10) raw.tags[slots[i]] = 1 + coin(rng) % 2;
    i += 2;
  }
  if (i < slots.size()) {
    if (total + 1 <= max_half_edges) {
      ++total;
    } else {
      // Drop the last vertex slot by pairing the leftover with another leg.
      const int h = slots[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (!raw.matching.count(slots[j])) {
          raw.matching[h] = slots[j];
          raw.matching[slots[j]] = h;
          --total;
          break;
        }
      }
    }
  }
  if (allow_bare) {
    while (total + 2 <= max_half_edges && coin(rng) < 15) {
      ++raw.bare_edges;
      total += 2;
    }
  }
  Diagram d = build_diagram(raw, ColourTable::open());
  return d;
}

// Random relabelling of half-edge ids and vertex order.
inline Diagram shuffle_labels(const Diagram& d, std::mt19937& rng) {
  std::vector<int> perm(d.half_edge_count()), vperm(d.vertices().size());
  std::iota(perm.begin(), perm.end(), 0);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  return relabel(d, perm, vperm);
}

}  // namespace feyn::testing
