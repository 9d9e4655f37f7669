#include "feyn/diagram.hpp"

#include <algorithm>
#include <numeric>

#include "feyn/error.hpp"

namespace feyn {

ColourShape Vertex::shape() const {
  if (kind == VertexKind::coupon) return {kind, inputs, valence() - inputs};
  return {kind, 0, valence()};
}

Diagram::Diagram(std::vector<Vertex> vertices, std::vector<HalfEdge> endpoints,
                 std::vector<HalfEdge> mate, std::vector<int> tags)
    : vertices_(std::move(vertices)),
      endpoints_(std::move(endpoints)),
      mate_(std::move(mate)),
      tag_(std::move(tags)) {
  const int h_count = static_cast<int>(mate_.size());
  if (tag_.empty()) tag_.assign(h_count, 0);
  if (static_cast<int>(tag_.size()) != h_count)
    fail(ErrorCode::invalid_argument, "tag vector has the wrong length");

  owner_.assign(h_count, Owner{});
  std::vector<char> seen(h_count, 0);
  auto claim = [&](HalfEdge h) {
    if (h < 0 || h >= h_count) fail(ErrorCode::invalid_argument, "half-edge id out of range");
    if (seen[h]) fail(ErrorCode::invalid_argument, "half-edge used twice");
    seen[h] = 1;
  };
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    Vertex& vx = vertices_[v];
    if (vx.kind == VertexKind::coupon) {
      if (vx.inputs < 0 || vx.inputs > vx.valence())
        fail(ErrorCode::invalid_argument, "coupon input count out of range");
    } else if (vx.inputs != 0) {
      fail(ErrorCode::invalid_argument, "only coupon vertices have inputs");
    }
    if (vx.kind == VertexKind::cyclic && !vx.slots.empty()) {
      auto smallest = std::min_element(vx.slots.begin(), vx.slots.end());
      std::rotate(vx.slots.begin(), smallest, vx.slots.end());
    }
    for (std::size_t s = 0; s < vx.slots.size(); ++s) {
      claim(vx.slots[s]);
      owner_[vx.slots[s]] = Owner{false, static_cast<int>(v), static_cast<int>(s)};
    }
  }
  for (std::size_t e = 0; e < endpoints_.size(); ++e) {
    claim(endpoints_[e]);
    owner_[endpoints_[e]] = Owner{true, static_cast<int>(e), 0};
  }
  for (int h = 0; h < h_count; ++h) {
    if (!seen[h]) fail(ErrorCode::invalid_argument, "half-edge belongs to no vertex or endpoint");
    const int m = mate_[h];
    if (m < 0 || m >= h_count || m == h || mate_[m] != h)
      fail(ErrorCode::invalid_argument, "non-involutive matching");
    if (tag_[h] != tag_[m]) fail(ErrorCode::invalid_argument, "edge tag differs between its ends");
  }
}

std::vector<std::pair<HalfEdge, HalfEdge>> Diagram::edges() const {
  std::vector<std::pair<HalfEdge, HalfEdge>> out;
  for (HalfEdge h = 0; h < static_cast<HalfEdge>(mate_.size()); ++h)
    if (h < mate_[h]) out.emplace_back(h, mate_[h]);
  return out;
}

TypedDiagram::TypedDiagram(Diagram base, std::vector<int> in_order, std::vector<int> out_order)
    : base_(std::move(base)), in_(std::move(in_order)), out_(std::move(out_order)) {
  const int legs = static_cast<int>(base_.leg_count());
  if (static_cast<int>(in_.size() + out_.size()) != legs)
    fail(ErrorCode::invalid_argument, "input/output numbering does not cover all legs");
  std::vector<char> seen(legs, 0);
  for (const auto* list : {&in_, &out_}) {
    for (int e : *list) {
      if (e < 0 || e >= legs) fail(ErrorCode::invalid_argument, "endpoint index out of range");
      if (seen[e]) fail(ErrorCode::invalid_argument, "endpoint numbered twice");
      seen[e] = 1;
    }
  }
}

Diagram build_diagram(const RawDiagram& raw, const ColourTable& table) {
  std::map<int, int> dense;  // raw id -> dense id
  std::vector<Vertex> vertices;
  vertices.reserve(raw.vertices.size());
  for (const RawVertex& rv : raw.vertices) {
    Vertex v;
    v.kind = rv.kind;
    v.colour = rv.colour;
    v.inputs = rv.kind == VertexKind::coupon ? rv.inputs : 0;
    v.root = rv.root;
    if (rv.kind == VertexKind::coupon &&
        (rv.inputs < 0 || rv.inputs > static_cast<int>(rv.slots.size())))
      fail(ErrorCode::invalid_argument, "coupon input count out of range");
    const ColourEntry* entry = table.find(rv.colour);
    if (!entry) {
      if (!table.is_open())
        fail(ErrorCode::unknown_colour, "unknown colour '" + rv.colour + "'");
      v.special = ColourTable::open_special(rv.colour);
    } else {
      if (entry->shape.kind != rv.kind)
        fail(ErrorCode::unknown_colour, "unknown " + std::string(kind_name(rv.kind)) +
                                            " colour '" + rv.colour + "'");
      if (entry->shape.valence() != static_cast<int>(rv.slots.size()) ||
          (rv.kind == VertexKind::coupon && entry->shape.inputs != rv.inputs))
        fail(ErrorCode::invalid_argument, "valence mismatch for colour '" + rv.colour + "'");
      v.special = entry->special;
    }
    for (int id : rv.slots) {
      if (dense.count(id)) fail(ErrorCode::invalid_argument, "half-edge used twice");
      const int next = static_cast<int>(dense.size());
      dense[id] = next;
      v.slots.push_back(next);
    }
    vertices.push_back(std::move(v));
  }

  const int slot_count = static_cast<int>(dense.size());
  std::vector<HalfEdge> mate(slot_count, -1);
  std::vector<int> tags(slot_count, 0);
  for (const auto& [from, to] : raw.matching) {
    auto a = dense.find(from);
    auto b = dense.find(to);
    if (a == dense.end() || b == dense.end())
      fail(ErrorCode::invalid_argument, "matching refers to an unknown half-edge");
    auto back = raw.matching.find(to);
    if (from == to || back == raw.matching.end() || back->second != from)
      fail(ErrorCode::invalid_argument, "non-involutive matching");
    mate[a->second] = b->second;
  }
  for (const auto& [id, tag] : raw.tags) {
    auto a = dense.find(id);
    if (a == dense.end()) fail(ErrorCode::invalid_argument, "tag refers to an unknown half-edge");
    if (mate[a->second] < 0) fail(ErrorCode::invalid_argument, "tag on an unmatched half-edge");
    tags[a->second] = tag;
    tags[mate[a->second]] = tag;
  }

  std::vector<HalfEdge> endpoints;
  for (int h = 0; h < slot_count; ++h) {
    if (mate[h] >= 0) continue;
    const int e = static_cast<int>(mate.size());
    mate.push_back(h);
    tags.push_back(0);
    mate[h] = e;
    endpoints.push_back(e);
  }
  if (raw.bare_edges < 0) fail(ErrorCode::invalid_argument, "negative bare edge count");
  for (int b = 0; b < raw.bare_edges; ++b) {
    const int e = static_cast<int>(mate.size());
    mate.push_back(e + 1);
    mate.push_back(e);
    tags.push_back(0);
    tags.push_back(0);
    endpoints.push_back(e);
    endpoints.push_back(e + 1);
  }
  return Diagram(std::move(vertices), std::move(endpoints), std::move(mate), std::move(tags));
}

int degree(const Diagram& d) {
  int total = 0;
  for (const Vertex& v : d.vertices())
    if (!v.special) total += v.valence();
  return total;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Component label per vertex and per endpoint; vertices are nodes
// [0, V), endpoints [V, V + E).
std::vector<int> component_labels(const Diagram& d, int& count) {
  const int nv = static_cast<int>(d.vertices().size());
  const int ne = static_cast<int>(d.leg_count());
  UnionFind uf(nv + ne);
  auto node = [&](HalfEdge h) {
    const Owner& o = d.owner(h);
    return o.is_endpoint ? nv + o.index : o.index;
  };
  for (HalfEdge h = 0; h < static_cast<HalfEdge>(d.half_edge_count()); ++h)
    uf.unite(node(h), node(d.mate(h)));
  std::vector<int> label(nv + ne, -1);
  std::map<int, int> root_label;
  count = 0;
  for (int x = 0; x < nv + ne; ++x) {
    const int r = uf.find(x);
    auto it = root_label.find(r);
    if (it == root_label.end()) it = root_label.emplace(r, count++).first;
    label[x] = it->second;
  }
  return label;
}

}  // namespace

std::size_t component_count(const Diagram& d) {
  int count = 0;
  component_labels(d, count);
  return static_cast<std::size_t>(count);
}

std::vector<Diagram> connected_components(const Diagram& d) {
  int count = 0;
  const std::vector<int> label = component_labels(d, count);
  const int nv = static_cast<int>(d.vertices().size());
  std::vector<Diagram> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    std::vector<int> renumber(d.half_edge_count(), -1);
    int next = 0;
    std::vector<Vertex> vertices;
    for (int v = 0; v < nv; ++v) {
      if (label[v] != c) continue;
      Vertex vx = d.vertices()[v];
      for (HalfEdge& h : vx.slots) {
        renumber[h] = next++;
        h = renumber[h];
      }
      vertices.push_back(std::move(vx));
    }
    std::vector<HalfEdge> endpoints;
    for (std::size_t e = 0; e < d.leg_count(); ++e) {
      if (label[nv + e] != c) continue;
      const HalfEdge h = d.endpoints()[e];
      renumber[h] = next++;
      endpoints.push_back(renumber[h]);
    }
    std::vector<HalfEdge> mate(next);
    std::vector<int> tags(next);
    for (HalfEdge h = 0; h < static_cast<HalfEdge>(d.half_edge_count()); ++h) {
      if (renumber[h] < 0) continue;
      mate[renumber[h]] = renumber[d.mate(h)];
      tags[renumber[h]] = d.tag(h);
    }
    out.emplace_back(std::move(vertices), std::move(endpoints), std::move(mate), std::move(tags));
  }
  return out;
}

TypedDiagram make_typed(const Diagram& d, int inputs) {
  const int legs = static_cast<int>(d.leg_count());
  if (inputs < 0 || inputs > legs) fail(ErrorCode::arity, "more inputs than legs");
  std::vector<int> in(inputs), out(legs - inputs);
  std::iota(in.begin(), in.end(), 0);
  std::iota(out.begin(), out.end(), inputs);
  return TypedDiagram(d, std::move(in), std::move(out));
}

Diagram forget_numbering(const TypedDiagram& t) { return t.base(); }

Diagram disjoint_union(const Diagram& a, const Diagram& b) {
  const int offset = static_cast<int>(a.half_edge_count());
  std::vector<Vertex> vertices = a.vertices();
  for (Vertex v : b.vertices()) {
    for (HalfEdge& h : v.slots) h += offset;
    vertices.push_back(std::move(v));
  }
  std::vector<HalfEdge> endpoints = a.endpoints();
  for (HalfEdge h : b.endpoints()) endpoints.push_back(h + offset);
  std::vector<HalfEdge> mate = a.mates();
  for (HalfEdge h : b.mates()) mate.push_back(h + offset);
  std::vector<int> tags = a.tags();
  tags.insert(tags.end(), b.tags().begin(), b.tags().end());
  return Diagram(std::move(vertices), std::move(endpoints), std::move(mate), std::move(tags));
}

Diagram relabel(const Diagram& d, std::span<const int> perm, std::span<const int> vertex_perm) {
  const std::size_t h_count = d.half_edge_count();
  if (perm.size() != h_count || vertex_perm.size() != d.vertices().size())
    fail(ErrorCode::invalid_argument, "relabelling has the wrong size");
  std::vector<Vertex> vertices(d.vertices().size());
  for (std::size_t v = 0; v < d.vertices().size(); ++v) {
    Vertex vx = d.vertices()[v];
    for (HalfEdge& h : vx.slots) h = perm[h];
    vertices[vertex_perm[v]] = std::move(vx);
  }
  std::vector<HalfEdge> endpoints;
  for (HalfEdge h : d.endpoints()) endpoints.push_back(perm[h]);
  std::vector<HalfEdge> mate(h_count);
  std::vector<int> tags(h_count);
  for (std::size_t h = 0; h < h_count; ++h) {
    mate[perm[h]] = perm[d.mate(static_cast<HalfEdge>(h))];
    tags[perm[h]] = d.tag(static_cast<HalfEdge>(h));
  }
  return Diagram(std::move(vertices), std::move(endpoints), std::move(mate), std::move(tags));
}

Diagram mark_as_root(const Diagram& d) {
  std::vector<Vertex> vertices = d.vertices();
  for (Vertex& v : vertices) v.root = true;
  std::vector<int> tags = d.tags();
  for (HalfEdge h = 0; h < static_cast<HalfEdge>(d.half_edge_count()); ++h)
    if (!d.is_endpoint(h) && !d.is_endpoint(d.mate(h)) && tags[h] == 0) tags[h] = kRootEdgeTag;
  return Diagram(std::move(vertices), d.endpoints(), d.mates(), std::move(tags));
}

Diagram unmark(const Diagram& d) {
  std::vector<Vertex> vertices = d.vertices();
  for (Vertex& v : vertices) v.root = false;
  std::vector<int> tags = d.tags();
  for (int& t : tags)
    if (t == kRootEdgeTag) t = 0;
  return Diagram(std::move(vertices), d.endpoints(), d.mates(), std::move(tags));
}

Diagram star(VertexKind kind, const std::string& colour, int valence, bool special, int inputs) {
  Vertex v;
  v.kind = kind;
  v.colour = colour;
  v.special = special;
  v.inputs = kind == VertexKind::coupon ? inputs : 0;
  std::vector<HalfEdge> endpoints;
  std::vector<HalfEdge> mate(2 * valence);
  for (int s = 0; s < valence; ++s) {
    v.slots.push_back(s);
    endpoints.push_back(valence + s);
    mate[s] = valence + s;
    mate[valence + s] = s;
  }
  return Diagram({v}, std::move(endpoints), std::move(mate));
}

}  // namespace feyn
