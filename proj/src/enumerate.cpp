#include "feyn/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "feyn/error.hpp"

namespace feyn {

namespace {

void check_degree(int max_degree) {
  if (max_degree < 0) fail(ErrorCode::invalid_argument, "negative degree bound");
  if (max_degree > kMaxDegreeLimit)
    fail(ErrorCode::limit, "degree bound " + std::to_string(max_degree) + " exceeds " +
                               std::to_string(kMaxDegreeLimit));
}

Vertex ordinary_vertex(const ColourEntry& e) {
  Vertex v;
  v.kind = e.shape.kind;
  v.colour = e.name;
  v.inputs = e.shape.inputs;
  v.special = false;
  return v;
}

// Calls visit(counts) for every vector of multiplicities over the colours
// with total valence at most budget and at most max_count vertices (when
// non-negative).
void for_each_multiset(const std::vector<ColourEntry>& colours, int budget, int max_count,
                       const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> counts(colours.size(), 0);
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int left, int used) {
    if (i == colours.size()) {
      visit(counts);
      return;
    }
    const int val = colours[i].shape.valence();
    for (int c = 0; c * val <= left && (max_count < 0 || used + c <= max_count); ++c) {
      counts[i] = c;
      rec(i + 1, left - c * val, used + c);
    }
    counts[i] = 0;
  };
  rec(0, budget, 0);
}

// Perfect matchings of `free`, smallest unmatched half-edge first.
void for_each_matching(const std::vector<HalfEdge>& free, std::vector<HalfEdge>& mate,
                       const std::function<void()>& visit) {
  const std::size_t n = free.size();
  std::vector<char> done(n, 0);
  std::function<void()> rec = [&]() {
    std::size_t first = 0;
    while (first < n && done[first]) ++first;
    if (first == n) {
      visit();
      return;
    }
    done[first] = 1;
    for (std::size_t j = first + 1; j < n; ++j) {
      if (done[j]) continue;
      done[j] = 1;
      mate[free[first]] = free[j];
      mate[free[j]] = free[first];
      rec();
      done[j] = 0;
    }
    done[first] = 0;
  };
  rec();
}

bool every_component_meets_root(const Diagram& d) {
  for (const Diagram& c : connected_components(d)) {
    bool has_root = false;
    for (const Vertex& v : c.vertices()) has_root = has_root || v.root;
    if (!has_root) return false;
  }
  return true;
}

}  // namespace

Enumeration enumerate_closed(const ColourTable& table, const std::optional<Diagram>& root,
                             int max_degree, EnumFlags flags) {
  check_degree(max_degree);
  Enumeration out;
  out.max_degree = max_degree;
  out.root = root;
  out.flags = flags;

  // Root vertices and edges, with its legs turned into free half-edges.
  std::vector<Vertex> base_vertices;
  std::vector<HalfEdge> base_mate;
  std::vector<int> base_tags;
  std::vector<HalfEdge> root_free;
  int root_degree = 0;
  if (root) {
    const Diagram marked = mark_as_root(*root);
    for (std::size_t e = 0; e < marked.leg_count(); ++e)
      if (marked.is_endpoint(marked.mate(marked.endpoints()[e])))
        fail(ErrorCode::invalid_argument, "root diagram contains a bare edge");
    base_vertices = marked.vertices();
    std::vector<HalfEdge> renumber(marked.half_edge_count(), -1);
    int next = 0;
    for (const Vertex& v : base_vertices)
      for (HalfEdge h : v.slots) renumber[h] = next++;
    for (Vertex& v : base_vertices)
      for (HalfEdge& h : v.slots) h = renumber[h];
    base_mate.assign(next, -1);
    base_tags.assign(next, 0);
    for (HalfEdge h = 0; h < static_cast<HalfEdge>(marked.half_edge_count()); ++h) {
      if (marked.is_endpoint(h)) continue;
      const HalfEdge m = marked.mate(h);
      if (marked.is_endpoint(m)) {
        root_free.push_back(renumber[h]);
      } else {
        base_mate[renumber[h]] = renumber[m];
        base_tags[renumber[h]] = marked.tag(h);
      }
    }
    root_degree = degree(*root);
  }

  const std::vector<ColourEntry> colours = table.ordinary();
  std::set<std::vector<std::uint8_t>> seen;
  const int room = flags.max_vertices < 0
                       ? -1
                       : flags.max_vertices - static_cast<int>(base_vertices.size());
  if (root_degree <= max_degree && (flags.max_vertices < 0 || room >= 0)) {
    for_each_multiset(colours, max_degree - root_degree, room, [&](const std::vector<int>& counts) {
      std::vector<Vertex> vertices = base_vertices;
      std::vector<HalfEdge> free = root_free;
      int next = static_cast<int>(base_mate.size());
      for (std::size_t i = 0; i < colours.size(); ++i) {
        for (int c = 0; c < counts[i]; ++c) {
          Vertex v = ordinary_vertex(colours[i]);
          for (int s = 0; s < colours[i].shape.valence(); ++s) {
            v.slots.push_back(next);
            free.push_back(next++);
          }
          vertices.push_back(std::move(v));
        }
      }
      if (free.size() % 2 == 1) return;
      std::vector<HalfEdge> mate = base_mate;
      mate.resize(next, -1);
      std::vector<int> tags = base_tags;
      tags.resize(next, 0);
      for_each_matching(free, mate, [&]() {
        Diagram d(vertices, {}, mate, tags);
        if (flags.connected && component_count(d) != 1) return;
        if (flags.reduced && !every_component_meets_root(d)) return;
        CanonicalCode code = canonical_code(d);
        if (!seen.insert(code.code).second) return;
        const int deg = degree(d);
        out.entries.push_back({std::move(code), std::move(d), deg});
      });
    });
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const EnumEntry& a, const EnumEntry& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.code.code < b.code.code;
  });
  return out;
}

std::vector<OpenEntry> enumerate_open(const ColourTable& table, int legs, int max_degree,
                                      bool typed, bool connected, int max_vertices) {
  check_degree(max_degree);
  if (legs < 0) fail(ErrorCode::invalid_argument, "negative leg count");
  const std::vector<ColourEntry> colours = table.ordinary();
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<OpenEntry> out;
  for_each_multiset(colours, max_degree, max_vertices, [&](const std::vector<int>& counts) {
    std::vector<Vertex> vertices;
    std::vector<HalfEdge> free;
    int next = 0;
    for (std::size_t i = 0; i < colours.size(); ++i) {
      for (int c = 0; c < counts[i]; ++c) {
        Vertex v = ordinary_vertex(colours[i]);
        for (int s = 0; s < colours[i].shape.valence(); ++s) {
          v.slots.push_back(next);
          free.push_back(next++);
        }
        vertices.push_back(std::move(v));
      }
    }
    std::vector<HalfEdge> endpoints;
    for (int e = 0; e < legs; ++e) {
      endpoints.push_back(next);
      free.push_back(next++);
    }
    if (free.size() % 2 == 1) return;
    std::vector<HalfEdge> mate(next, -1);
    std::vector<int> out_order(legs);
    for (int e = 0; e < legs; ++e) out_order[e] = e;
    for_each_matching(free, mate, [&]() {
      TypedDiagram t(Diagram(vertices, endpoints, mate), {}, out_order);
      if (connected && component_count(t.base()) != 1) return;
      CanonicalCode code = typed ? canonical_code(t) : canonical_code(t.base());
      if (!seen.insert(code.code).second) return;
      const int deg = degree(t.base());
      out.push_back({std::move(code), std::move(t), deg});
    });
  });
  std::sort(out.begin(), out.end(), [](const OpenEntry& a, const OpenEntry& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.code.code < b.code.code;
  });
  return out;
}

RationalSeries groupoid_integral(const Enumeration& e,
                                 const std::function<Rational(const Diagram&)>& weight) {
  RationalSeries s(e.max_degree);
  for (const EnumEntry& x : e.entries) {
    const Rational w = weight ? weight(x.representative) : Rational(1);
    s.add_term(monomial_of(x.representative), Rational(w * Rational(1, x.code.aut_order)));
  }
  return s;
}

PowerCheck symmetric_power_check(const Enumeration& full, const Enumeration& connected) {
  PowerCheck result;
  auto fail_with = [&](std::string msg) {
    if (result.ok) result.message = std::move(msg);
    result.ok = false;
  };
  std::map<std::vector<std::uint8_t>, const EnumEntry*> conn;
  for (const EnumEntry& e : connected.entries) conn[e.code.code] = &e;

  std::set<std::vector<std::vector<std::uint8_t>>> factorisations;
  for (const EnumEntry& e : full.entries) {
    std::map<std::vector<std::uint8_t>, std::uint64_t> parts;
    for (const Diagram& c : connected_components(e.representative)) {
      const CanonicalCode code = canonical_code(c);
      if (!conn.count(code.code)) {
        fail_with("component of a class of degree " + std::to_string(e.degree) +
                  " is not among the connected classes");
        continue;
      }
      ++parts[code.code];
    }
    unsigned __int128 aut = 1;
    std::vector<std::vector<std::uint8_t>> key;
    for (const auto& [code, m] : parts) {
      auto it = conn.find(code);
      if (it == conn.end()) continue;
      for (std::uint64_t k = 1; k <= m; ++k) aut *= k * it->second->code.aut_order;
      for (std::uint64_t k = 0; k < m; ++k) key.push_back(code);
    }
    if (aut != e.code.aut_order)
      fail_with("|Aut| of a class of degree " + std::to_string(e.degree) +
                " differs from the product over its components");
    if (!factorisations.insert(key).second) fail_with("two classes share a factorisation");
  }

  // Count multisets of connected classes within the degree bound.
  std::vector<int> degrees;
  for (const EnumEntry& e : connected.entries) degrees.push_back(e.degree);
  std::function<std::uint64_t(std::size_t, int)> count = [&](std::size_t i, int left) {
    if (i == degrees.size()) return std::uint64_t{1};
    std::uint64_t total = 0;
    if (degrees[i] == 0) {
      fail_with("a connected class of degree zero has unbounded multiplicity");
      return count(i + 1, left);
    }
    for (int k = 0; k * degrees[i] <= left; ++k) total += count(i + 1, left - k * degrees[i]);
    return total;
  };
  const std::uint64_t expected = count(0, full.max_degree);
  if (expected != full.entries.size())
    fail_with("expected " + std::to_string(expected) + " classes from connected ones, found " +
              std::to_string(full.entries.size()));
  return result;
}

}  // namespace feyn
