#include "feyn/prop.hpp"

#include <functional>
#include <map>

#include "feyn/error.hpp"

namespace feyn {

namespace {

// Builds a typed diagram out of bare edges; pairs[k] = {endpoint a, endpoint b}
// where each endpoint is given as (is_input, number).
struct Port {
  bool input;
  int number;
};

TypedDiagram wiring(const std::vector<std::pair<Port, Port>>& pairs, int src, int tgt) {
  const int e_count = 2 * static_cast<int>(pairs.size());
  std::vector<HalfEdge> endpoints(e_count), mate(e_count);
  std::vector<int> in(src, -1), out(tgt, -1);
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    const int a = 2 * k, b = 2 * k + 1;
    endpoints[a] = a;
    endpoints[b] = b;
    mate[a] = b;
    mate[b] = a;
    for (auto [port, e] : {std::pair{pairs[k].first, a}, std::pair{pairs[k].second, b}})
      (port.input ? in : out)[port.number] = e;
  }
  return TypedDiagram(Diagram({}, std::move(endpoints), std::move(mate)), std::move(in),
                      std::move(out));
}

}  // namespace

TypedDiagram compose(const TypedDiagram& g, const TypedDiagram& f) {
  if (g.source() != f.target())
    fail(ErrorCode::arity, "cannot compose: source " + std::to_string(g.source()) +
                               " does not match target " + std::to_string(f.target()));
  const Diagram u = disjoint_union(f.base(), g.base());
  const int f_legs = static_cast<int>(f.base().leg_count());
  std::vector<HalfEdge> mate = u.mates();
  std::vector<int> tags = u.tags();
  std::vector<char> removed(u.half_edge_count(), 0);
  for (int k = 0; k < g.source(); ++k) {
    const HalfEdge a = u.endpoints()[f_legs + g.inputs()[k]];
    const HalfEdge b = u.endpoints()[f.outputs()[k]];
    const HalfEdge pa = mate[a];
    const HalfEdge pb = mate[b];
    if (pa == b) fail(ErrorCode::invalid_argument, "composition closes a loop with no vertex");
    int tag = tags[a];
    if (tags[b] != 0) {
      if (tag != 0 && tag != tags[b])
        fail(ErrorCode::incompatible, "composition joins edges with different tags");
      tag = tags[b];
    }
    mate[pa] = pb;
    mate[pb] = pa;
    tags[pa] = tags[pb] = tag;
    removed[a] = removed[b] = 1;
  }

  std::vector<HalfEdge> renumber(u.half_edge_count(), -1);
  int next = 0;
  for (std::size_t h = 0; h < u.half_edge_count(); ++h)
    if (!removed[h]) renumber[h] = next++;
  std::vector<Vertex> vertices = u.vertices();
  for (Vertex& v : vertices)
    for (HalfEdge& h : v.slots) h = renumber[h];
  std::vector<HalfEdge> endpoints;
  std::vector<int> endpoint_index(u.leg_count(), -1);
  for (std::size_t e = 0; e < u.leg_count(); ++e) {
    const HalfEdge h = u.endpoints()[e];
    if (removed[h]) continue;
    endpoint_index[e] = static_cast<int>(endpoints.size());
    endpoints.push_back(renumber[h]);
  }
  std::vector<HalfEdge> new_mate(next);
  std::vector<int> new_tags(next);
  for (std::size_t h = 0; h < u.half_edge_count(); ++h) {
    if (removed[h]) continue;
    new_mate[renumber[h]] = renumber[mate[h]];
    new_tags[renumber[h]] = tags[h];
  }
  std::vector<int> in, out;
  for (int e : f.inputs()) in.push_back(endpoint_index[e]);
  for (int e : g.outputs()) out.push_back(endpoint_index[f_legs + e]);
  return TypedDiagram(Diagram(std::move(vertices), std::move(endpoints), std::move(new_mate),
                              std::move(new_tags)),
                      std::move(in), std::move(out));
}

TypedDiagram tensor(const TypedDiagram& a, const TypedDiagram& b) {
  Diagram u = disjoint_union(a.base(), b.base());
  const int shift = static_cast<int>(a.base().leg_count());
  std::vector<int> in = a.inputs(), out = a.outputs();
  for (int e : b.inputs()) in.push_back(e + shift);
  for (int e : b.outputs()) out.push_back(e + shift);
  return TypedDiagram(std::move(u), std::move(in), std::move(out));
}

TypedDiagram braiding(int m, int n) {
  if (m < 0 || n < 0) fail(ErrorCode::invalid_argument, "negative braiding size");
  std::vector<std::pair<Port, Port>> pairs;
  for (int i = 0; i < m; ++i) pairs.push_back({{true, i}, {false, n + i}});
  for (int i = 0; i < n; ++i) pairs.push_back({{true, m + i}, {false, i}});
  return wiring(pairs, m + n, m + n);
}

TypedDiagram identity(int n) { return braiding(n, 0); }

TypedDiagram empty_morphism() { return TypedDiagram(Diagram(), {}, {}); }

namespace {

void pairings_rec(std::vector<int>& partner, int k,
                  const std::function<void(const TypedDiagram&)>& visit) {
  int first = 0;
  while (first < k && partner[first] >= 0) ++first;
  if (first == k) {
    std::vector<std::pair<Port, Port>> pairs;
    for (int i = 0; i < k; ++i)
      if (i < partner[i]) pairs.push_back({{false, i}, {false, partner[i]}});
    visit(wiring(pairs, 0, k));
    return;
  }
  for (int j = first + 1; j < k; ++j) {
    if (partner[j] >= 0) continue;
    partner[first] = j;
    partner[j] = first;
    pairings_rec(partner, k, visit);
    partner[first] = partner[j] = -1;
  }
}

}  // namespace

void for_each_pairing(int k, const std::function<void(const TypedDiagram&)>& visit) {
  if (k < 0) fail(ErrorCode::invalid_argument, "negative pairing size");
  if (k > 16) fail(ErrorCode::limit, "pairing enumeration limited to 16 points");
  if (k % 2 == 1) return;
  std::vector<int> partner(k, -1);
  pairings_rec(partner, k, visit);
}

std::vector<TypedDiagram> edge_pairings(int k) {
  std::vector<TypedDiagram> out;
  for_each_pairing(k, [&](const TypedDiagram& p) { out.push_back(p); });
  return out;
}

std::vector<ClassEntry> closures(const Diagram& g) {
  const int k = static_cast<int>(g.leg_count());
  std::vector<ClassEntry> out;
  if (k % 2 == 1) return out;
  const TypedDiagram numbered = make_typed(g, k);
  std::map<std::vector<std::uint8_t>, ClassEntry> classes;
  for_each_pairing(k, [&](const TypedDiagram& p) {
    Diagram closed = compose(numbered, p).base();
    CanonicalCode code = canonical_code(closed);
    auto it = classes.find(code.code);
    if (it == classes.end())
      it = classes.emplace(code.code, ClassEntry{std::move(closed), code, 0}).first;
    ++it->second.multiplicity;
  });
  for (auto& [key, entry] : classes) out.push_back(std::move(entry));
  return out;
}

}  // namespace feyn
