#include "feyn/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "feyn/error.hpp"

namespace feyn {

namespace {

using Word = std::int64_t;
using Words = std::vector<Word>;
using Adjacency = std::vector<std::vector<std::pair<Word, int>>>;

// Relation labels in the structure graph.
constexpr Word kSlotToVertex = 1;
constexpr Word kVertexToSlot = 2;
constexpr Word kNext = 3;
constexpr Word kPrev = 4;
constexpr Word kEdgeBase = 16;

// Decoration kinds attached to structure nodes.
constexpr Word kLeg = 1;
constexpr Word kPendant = 2;
constexpr Word kLoop = 3;

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::limit, "automorphism count overflows 64 bits");
  return r;
}

std::uint64_t factorial_u64(std::uint64_t n) {
  std::uint64_t f = 1;
  for (std::uint64_t k = 2; k <= n; ++k) f = mul_checked(f, k);
  return f;
}

std::uint64_t pow_checked(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < e; ++k) r = mul_checked(r, b);
  return r;
}

void push_string(Words& w, const std::string& s) {
  w.push_back(static_cast<Word>(s.size()));
  for (unsigned char c : s) w.push_back(c);
}

Words vertex_descriptor(const Vertex& v) {
  Words w{static_cast<Word>(v.kind), v.valence(), v.inputs, v.special ? 1 : 0, v.root ? 1 : 0};
  push_string(w, v.colour);
  return w;
}

// Ranks the signatures: equal signatures share a rank, order is lexicographic.
int rank_signatures(const std::vector<Words>& sig, std::vector<int>& out) {
  const int n = static_cast<int>(sig.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
  out.assign(n, 0);
  int r = -1;
  for (int i = 0; i < n; ++i) {
    if (i == 0 || sig[order[i]] != sig[order[i - 1]]) ++r;
    out[order[i]] = r;
  }
  return r + 1;
}

int rank_values(std::vector<int>& col) {
  std::vector<int> vals(col);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  for (int& c : col) c = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), c) - vals.begin());
  return static_cast<int>(vals.size());
}

// Canonical labelling of one connected structure graph by
// individualisation and refinement. Every leaf is visited, so the number of
// leaves carrying the minimal code is the order of the automorphism group.
class LabelSearch {
 public:
  LabelSearch(const std::vector<Words>& init, const Adjacency& adj) : init_(init), adj_(adj) {}

  void run() {
    std::vector<int> col;
    rank_signatures(init_, col);
    search(std::move(col));
  }

  const Words& best() const { return best_; }
  std::uint64_t count() const { return count_; }

 private:
  int refine(std::vector<int>& col) {
    int cells = rank_values(col);
    const int n = static_cast<int>(col.size());
    std::vector<Words> sig(n);
    std::vector<std::pair<Word, Word>> nb;
    while (true) {
      for (int u = 0; u < n; ++u) {
        nb.clear();
        for (const auto& [rel, v] : adj_[u]) nb.emplace_back(rel, col[v]);
        std::sort(nb.begin(), nb.end());
        Words& s = sig[u];
        s.clear();
        s.push_back(col[u]);
        for (const auto& [a, b] : nb) {
          s.push_back(a);
          s.push_back(b);
        }
      }
      const int next = rank_signatures(sig, col);
      if (next == cells) return cells;
      cells = next;
    }
  }

  void search(std::vector<int> col) {
    const int cells = refine(col);
    const int n = static_cast<int>(col.size());
    if (cells == n) {
      leaf(col);
      return;
    }
    std::vector<int> size(cells, 0);
    for (int c : col) ++size[c];
    int target = 0;
    while (size[target] == 1) ++target;
    for (int u = 0; u < n; ++u) {
      if (col[u] != target) continue;
      std::vector<int> next(n);
      for (int w = 0; w < n; ++w) next[w] = 2 * col[w] + (w == u ? 0 : 1);
      rank_values(next);
      search(std::move(next));
    }
  }

  void leaf(const std::vector<int>& col) {
    const int n = static_cast<int>(col.size());
    std::vector<int> node_at(n);
    for (int u = 0; u < n; ++u) node_at[col[u]] = u;
    Words code;
    code.push_back(n);
    std::vector<std::pair<Word, Word>> nb;
    for (int r = 0; r < n; ++r) {
      const int u = node_at[r];
      code.push_back(static_cast<Word>(init_[u].size()));
      code.insert(code.end(), init_[u].begin(), init_[u].end());
      nb.clear();
      for (const auto& [rel, v] : adj_[u]) nb.emplace_back(rel, col[v]);
      std::sort(nb.begin(), nb.end());
      code.push_back(static_cast<Word>(nb.size()));
      for (const auto& [a, b] : nb) {
        code.push_back(a);
        code.push_back(b);
      }
    }
    if (count_ == 0 || code < best_) {
      best_ = std::move(code);
      count_ = 1;
    } else if (code == best_) {
      ++count_;
    }
  }

  const std::vector<Words>& init_;
  const Adjacency& adj_;
  Words best_;
  std::uint64_t count_ = 0;
};

struct Component {
  Words words;
  std::uint64_t aut = 1;
};

// labels[e] is the numbering word of endpoint e, or 0 when untyped.
CanonicalCode canonical_impl(const Diagram& d, const std::vector<Word>& labels, Word header) {
  const auto& verts = d.vertices();
  const int nv = static_cast<int>(verts.size());
  const int h_count = static_cast<int>(d.half_edge_count());
  auto endpoint_label = [&](HalfEdge h) { return labels[d.owner(h).index]; };

  // 1-valent vertices hanging off a symmetric vertex become decorations of
  // that vertex, so that k equal pendants contribute k! analytically.
  std::vector<int> host(nv, -1);
  for (int v = 0; v < nv; ++v) {
    if (verts[v].valence() != 1) continue;
    const HalfEdge m = d.mate(verts[v].slots[0]);
    if (d.is_endpoint(m)) continue;
    const int q = d.owner(m).index;
    if (q != v && verts[q].kind == VertexKind::symmetric && verts[q].valence() >= 2) host[v] = q;
  }

  std::vector<Words> init;
  Adjacency adj;
  std::vector<std::vector<Words>> deco;
  std::vector<int> attach(h_count, -1);
  std::vector<char> symmetric_node;
  auto new_node = [&](Words w, bool sym) {
    init.push_back(std::move(w));
    adj.emplace_back();
    deco.emplace_back();
    symmetric_node.push_back(sym ? 1 : 0);
    return static_cast<int>(init.size()) - 1;
  };

  for (int v = 0; v < nv; ++v) {
    if (host[v] >= 0) continue;
    const Vertex& vx = verts[v];
    Words w{0};
    const Words desc = vertex_descriptor(vx);
    w.insert(w.end(), desc.begin(), desc.end());
    const bool sym = vx.kind == VertexKind::symmetric;
    const int vn = new_node(std::move(w), sym);
    if (sym) {
      for (HalfEdge h : vx.slots) attach[h] = vn;
      continue;
    }
    const int n = vx.valence();
    const int first = static_cast<int>(init.size());
    for (int s = 0; s < n; ++s) {
      const Word pos = vx.kind == VertexKind::coupon ? s : -1;
      const int sn = new_node(Words{1, static_cast<Word>(vx.kind), pos}, false);
      attach[vx.slots[s]] = sn;
      adj[sn].emplace_back(kSlotToVertex, vn);
      adj[vn].emplace_back(kVertexToSlot, sn);
    }
    if (vx.kind == VertexKind::cyclic) {
      for (int s = 0; s < n; ++s) {
        const int a = first + s;
        const int b = first + (s + 1) % n;
        adj[a].emplace_back(kNext, b);
        adj[b].emplace_back(kPrev, a);
      }
    }
  }

  std::map<std::tuple<int, int, int>, std::uint64_t> bundles;
  for (HalfEdge h = 0; h < h_count; ++h) {
    if (d.is_endpoint(h)) continue;
    const int v = d.owner(h).index;
    if (host[v] >= 0) continue;
    const HalfEdge m = d.mate(h);
    const int a = attach[h];
    if (d.is_endpoint(m)) {
      deco[a].push_back({kLeg, d.tag(h), endpoint_label(m)});
      continue;
    }
    const int q = d.owner(m).index;
    if (host[q] >= 0) {
      Words p{kPendant, d.tag(h)};
      const Words desc = vertex_descriptor(verts[q]);
      p.insert(p.end(), desc.begin(), desc.end());
      deco[a].push_back(std::move(p));
      continue;
    }
    if (h > m) continue;
    const int b = attach[m];
    if (a == b) {
      deco[a].push_back({kLoop, d.tag(h)});
      continue;
    }
    adj[a].emplace_back(kEdgeBase + d.tag(h), b);
    adj[b].emplace_back(kEdgeBase + d.tag(h), a);
    if (symmetric_node[a] && symmetric_node[b])
      ++bundles[{std::min(a, b), std::max(a, b), d.tag(h)}];
  }

  const int n_nodes = static_cast<int>(init.size());
  std::vector<std::uint64_t> node_factor(n_nodes, 1);
  for (int u = 0; u < n_nodes; ++u) {
    auto& list = deco[u];
    std::sort(list.begin(), list.end());
    std::uint64_t f = 1;
    for (std::size_t i = 0; i < list.size();) {
      std::size_t j = i;
      while (j < list.size() && list[j] == list[i]) ++j;
      f = mul_checked(f, factorial_u64(j - i));
      if (list[i][0] == kLoop) f = mul_checked(f, pow_checked(2, j - i));
      i = j;
    }
    node_factor[u] = f;
    Words& w = init[u];
    w.push_back(static_cast<Word>(list.size()));
    for (const Words& item : list) {
      w.push_back(static_cast<Word>(item.size()));
      w.insert(w.end(), item.begin(), item.end());
    }
  }
  std::vector<std::uint64_t> bundle_factor(n_nodes, 1);
  for (const auto& [key, k] : bundles) {
    const int a = std::get<0>(key);
    bundle_factor[a] = mul_checked(bundle_factor[a], factorial_u64(k));
  }

  // Connected components of the structure graph.
  std::vector<int> comp(n_nodes, -1);
  int n_comp = 0;
  for (int s = 0; s < n_nodes; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = n_comp;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& [rel, v] : adj[u]) {
        if (comp[v] < 0) {
          comp[v] = n_comp;
          stack.push_back(v);
        }
      }
    }
    ++n_comp;
  }

  std::vector<Component> comps;
  for (int c = 0; c < n_comp; ++c) {
    std::vector<int> local(n_nodes, -1);
    std::vector<int> members;
    for (int u = 0; u < n_nodes; ++u)
      if (comp[u] == c) {
        local[u] = static_cast<int>(members.size());
        members.push_back(u);
      }
    std::vector<Words> sub_init;
    Adjacency sub_adj;
    std::uint64_t factor = 1;
    for (int u : members) {
      sub_init.push_back(init[u]);
      auto& row = sub_adj.emplace_back();
      for (const auto& [rel, v] : adj[u]) row.emplace_back(rel, local[v]);
      factor = mul_checked(factor, mul_checked(node_factor[u], bundle_factor[u]));
    }
    LabelSearch search(sub_init, sub_adj);
    search.run();
    comps.push_back({search.best(), mul_checked(search.count(), factor)});
  }

  // Components consisting of a single bare edge.
  for (HalfEdge h = 0; h < h_count; ++h) {
    const HalfEdge m = d.mate(h);
    if (h > m || !d.is_endpoint(h) || !d.is_endpoint(m)) continue;
    Word la = endpoint_label(h);
    Word lb = endpoint_label(m);
    if (la > lb) std::swap(la, lb);
    comps.push_back({Words{-1, d.tag(h), la, lb}, la == lb ? 2u : 1u});
  }

  std::sort(comps.begin(), comps.end(),
            [](const Component& a, const Component& b) { return a.words < b.words; });
  Words all{header, static_cast<Word>(comps.size())};
  std::uint64_t aut = 1;
  for (std::size_t i = 0; i < comps.size();) {
    std::size_t j = i;
    while (j < comps.size() && comps[j].words == comps[i].words) ++j;
    aut = mul_checked(aut, factorial_u64(j - i));
    aut = mul_checked(aut, pow_checked(comps[i].aut, j - i));
    i = j;
  }
  for (const Component& c : comps) {
    all.push_back(static_cast<Word>(c.words.size()));
    all.insert(all.end(), c.words.begin(), c.words.end());
  }

  CanonicalCode out;
  out.aut_order = aut;
  out.code.reserve(all.size() * 4);
  for (Word w : all) {
    const auto u = static_cast<std::uint32_t>(w);
    out.code.push_back(static_cast<std::uint8_t>(u >> 24));
    out.code.push_back(static_cast<std::uint8_t>(u >> 16));
    out.code.push_back(static_cast<std::uint8_t>(u >> 8));
    out.code.push_back(static_cast<std::uint8_t>(u));
  }
  return out;
}

std::vector<Word> typed_labels(const TypedDiagram& t) {
  std::vector<Word> labels(t.base().leg_count(), 0);
  for (std::size_t k = 0; k < t.inputs().size(); ++k) labels[t.inputs()[k]] = 1 + static_cast<Word>(k);
  for (std::size_t k = 0; k < t.outputs().size(); ++k)
    labels[t.outputs()[k]] = (Word{1} << 16) + 1 + static_cast<Word>(k);
  return labels;
}

// Exhaustive search for structure-preserving maps from a to b.
class BruteMaps {
 public:
  BruteMaps(const Diagram& a, const std::vector<Word>& la, const Diagram& b,
            const std::vector<Word>& lb, bool stop_at_first)
      : a_(a), b_(b), la_(la), lb_(lb), stop_(stop_at_first) {}

  std::uint64_t run() {
    if (a_.half_edge_count() != b_.half_edge_count() ||
        a_.vertices().size() != b_.vertices().size() || a_.leg_count() != b_.leg_count())
      return 0;
    const std::uint64_t bare = bare_factor();
    if (bare == 0) return 0;
    phi_.assign(a_.half_edge_count(), -1);
    used_.assign(b_.vertices().size(), 0);
    count_ = 0;
    extend(0);
    return mul_checked(count_, bare);
  }

 private:
  Word label_a(HalfEdge h) const { return la_[a_.owner(h).index]; }
  Word label_b(HalfEdge h) const { return lb_[b_.owner(h).index]; }

  // Bare edges are matched by (tag, labels); each group of k equal edges
  // gives k! maps, times 2^k when their two ends carry the same label.
  std::uint64_t bare_factor() const {
    auto groups = [](const Diagram& d, const std::vector<Word>& l) {
      std::map<std::tuple<Word, Word, Word>, std::uint64_t> g;
      for (HalfEdge h = 0; h < static_cast<HalfEdge>(d.half_edge_count()); ++h) {
        const HalfEdge m = d.mate(h);
        if (h > m || !d.is_endpoint(h) || !d.is_endpoint(m)) continue;
        Word x = l[d.owner(h).index], y = l[d.owner(m).index];
        if (x > y) std::swap(x, y);
        ++g[{d.tag(h), x, y}];
      }
      return g;
    };
    const auto ga = groups(a_, la_);
    if (ga != groups(b_, lb_)) return 0;
    std::uint64_t f = 1;
    for (const auto& [key, k] : ga) {
      f = mul_checked(f, factorial_u64(k));
      if (std::get<1>(key) == std::get<2>(key)) f = mul_checked(f, pow_checked(2, k));
    }
    return f;
  }

  static bool same_type(const Vertex& x, const Vertex& y) {
    return x.kind == y.kind && x.colour == y.colour && x.valence() == y.valence() &&
           x.inputs == y.inputs && x.special == y.special && x.root == y.root;
  }

  // Checks half-edge h of a against its image in b.
  bool consistent(HalfEdge h) const {
    const HalfEdge img = phi_[h];
    if (a_.tag(h) != b_.tag(img)) return false;
    const HalfEdge m = a_.mate(h);
    const HalfEdge mi = b_.mate(img);
    if (a_.is_endpoint(m)) return b_.is_endpoint(mi) && label_a(m) == label_b(mi);
    if (b_.is_endpoint(mi)) return false;
    return phi_[m] < 0 || phi_[m] == mi;
  }

  void extend(std::size_t v) {
    if (stop_ && count_ > 0) return;
    if (v == a_.vertices().size()) {
      ++count_;
      return;
    }
    const Vertex& x = a_.vertices()[v];
    for (std::size_t w = 0; w < b_.vertices().size(); ++w) {
      if (used_[w] || !same_type(x, b_.vertices()[w])) continue;
      used_[w] = 1;
      const Vertex& y = b_.vertices()[w];
      const int n = x.valence();
      if (x.kind == VertexKind::symmetric) {
        std::vector<char> taken(n, 0);
        assign_symmetric(v, x, y, 0, taken);
      } else {
        const int rotations = x.kind == VertexKind::cyclic ? std::max(n, 1) : 1;
        for (int r = 0; r < rotations; ++r) {
          bool ok = true;
          for (int s = 0; s < n; ++s) phi_[x.slots[s]] = y.slots[(s + r) % n];
          for (int s = 0; s < n && ok; ++s) ok = consistent(x.slots[s]);
          if (ok) extend(v + 1);
          for (int s = 0; s < n; ++s) phi_[x.slots[s]] = -1;
        }
      }
      used_[w] = 0;
    }
  }

  void assign_symmetric(std::size_t v, const Vertex& x, const Vertex& y, int s,
                        std::vector<char>& taken) {
    if (s == x.valence()) {
      extend(v + 1);
      return;
    }
    const HalfEdge h = x.slots[s];
    for (int t = 0; t < y.valence(); ++t) {
      if (taken[t]) continue;
      phi_[h] = y.slots[t];
      // A loop partner on this vertex may already be placed; check both ends.
      const HalfEdge m = a_.mate(h);
      bool ok = consistent(h) && (a_.is_endpoint(m) || phi_[m] < 0 || consistent(m));
      if (ok) {
        taken[t] = 1;
        assign_symmetric(v, x, y, s + 1, taken);
        taken[t] = 0;
      }
      phi_[h] = -1;
      if (stop_ && count_ > 0) return;
    }
  }

  const Diagram& a_;
  const Diagram& b_;
  const std::vector<Word>& la_;
  const std::vector<Word>& lb_;
  bool stop_;
  std::vector<HalfEdge> phi_;
  std::vector<char> used_;
  std::uint64_t count_ = 0;
};

void check_bound(const Diagram& d, int max_half_edges) {
  if (static_cast<int>(d.half_edge_count()) > max_half_edges)
    fail(ErrorCode::limit, "diagram has " + std::to_string(d.half_edge_count()) +
                               " half-edges, above the brute-force bound of " +
                               std::to_string(max_half_edges));
}

}  // namespace

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

std::string CanonicalCode::hex() const { return to_hex(code); }

CanonicalCode canonical_code(const Diagram& d) {
  return canonical_impl(d, std::vector<Word>(d.leg_count(), 0), 0);
}

CanonicalCode canonical_code(const TypedDiagram& t) {
  return canonical_impl(t.base(), typed_labels(t), (Word{t.source()} << 16) + t.target() + 1);
}

std::uint64_t aut_order_bruteforce(const Diagram& d, int max_half_edges) {
  check_bound(d, max_half_edges);
  const std::vector<Word> labels(d.leg_count(), 0);
  return BruteMaps(d, labels, d, labels, false).run();
}

std::uint64_t aut_order_bruteforce(const TypedDiagram& t, int max_half_edges) {
  check_bound(t.base(), max_half_edges);
  const std::vector<Word> labels = typed_labels(t);
  return BruteMaps(t.base(), labels, t.base(), labels, false).run();
}

bool are_isomorphic(const Diagram& a, const Diagram& b) {
  return canonical_code(a).code == canonical_code(b).code;
}

bool are_isomorphic(const TypedDiagram& a, const TypedDiagram& b) {
  return canonical_code(a).code == canonical_code(b).code;
}

bool are_isomorphic_bruteforce(const Diagram& a, const Diagram& b, int max_half_edges) {
  check_bound(a, max_half_edges);
  check_bound(b, max_half_edges);
  const std::vector<Word> la(a.leg_count(), 0), lb(b.leg_count(), 0);
  return BruteMaps(a, la, b, lb, true).run() > 0;
}

}  // namespace feyn
