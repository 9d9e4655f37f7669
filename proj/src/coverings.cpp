#include "feyn/coverings.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "feyn/enumerate.hpp"
#include "feyn/error.hpp"
#include "feyn/iso.hpp"
#include "feyn/prop.hpp"

namespace feyn {

namespace {

using Code = std::vector<std::uint8_t>;

// An arbitrary but class-invariant rational weight.
Rational class_weight(const Code& code, std::uint64_t salt) {
  std::uint64_t h = 1469598103934665603ull ^ salt;
  for (std::uint8_t b : code) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return ratio(static_cast<unsigned long>(1 + h % 11), static_cast<unsigned long>(1 + (h >> 11) % 7));
}

struct Fibre {
  Code base;
  std::uint64_t aut = 1;
  Rational phi;
  std::vector<Code> objects;  // class of each object of the fibre
};

struct TotalClass {
  std::uint64_t aut = 1;
  Code base;
  Rational psi;
};

// Shared bookkeeping once fibres and total classes are known. `total`
// holds the classes of X found independently of the fibres, or is empty to
// use the ones seen in fibres.
CoveringReport evaluate(std::string name, std::uint64_t expected_degree,
                        const std::vector<Fibre>& fibres,
                        const std::map<Code, TotalClass>& seen_in_fibres,
                        const std::map<Code, TotalClass>& total) {
  CoveringReport r;
  r.name = std::move(name);
  r.degree = expected_degree;
  r.base_classes = fibres.size();
  auto note = [&](const std::string& msg) {
    if (r.message.empty()) r.message = msg;
  };

  std::map<Code, const Fibre*> by_base;
  for (const Fibre& f : fibres) by_base[f.base] = &f;

  std::map<Code, Rational> pushed;
  for (const Fibre& f : fibres) {
    if (expected_degree != 0 && f.objects.size() != expected_degree) {
      r.fibres_ok = false;
      note("fibre of size " + std::to_string(f.objects.size()));
    }
    std::map<Code, std::uint64_t> orbit;
    for (const Code& c : f.objects) ++orbit[c];
    Rational sum(0);
    for (const auto& [c, count] : orbit) {
      const TotalClass& x = seen_in_fibres.at(c);
      if (x.base != f.base) {
        r.cardinality_ok = false;
        note("class seen over two base classes");
      }
      if (ratio(f.aut, x.aut) != Rational(count)) {
        r.cardinality_ok = false;
        note("orbit of size " + std::to_string(count) + " where |Aut y|/|Aut x| = " +
             to_string(ratio(f.aut, x.aut)));
      }
      sum += x.psi * count;
    }
    pushed[f.base] = sum;
  }

  const std::map<Code, TotalClass>& xs = total.empty() ? seen_in_fibres : total;
  if (!total.empty()) {
    if (total.size() != seen_in_fibres.size()) {
      r.classes_ok = false;
      note("independent enumeration found " + std::to_string(total.size()) + " classes, fibres " +
           std::to_string(seen_in_fibres.size()));
    }
    for (const auto& [c, x] : total) {
      auto it = seen_in_fibres.find(c);
      if (it == seen_in_fibres.end() || it->second.aut != x.aut || it->second.base != x.base) {
        r.classes_ok = false;
        note("class of X missing from the fibres");
      }
    }
  }
  r.total_classes = xs.size();

  r.base_integral = 0;
  r.pullback = 0;
  r.pullback_expected = 0;
  r.pushed = 0;
  r.total_integral = 0;
  r.pushpull = 0;
  r.pushpull_expected = 0;
  for (const Fibre& f : fibres) {
    const Rational w(1, f.aut);
    const Rational deg(static_cast<long>(f.objects.size()));
    r.base_integral += f.phi * w;
    r.pullback_expected += deg * f.phi * w;
    r.pushed += pushed[f.base] * w;
    r.pushpull_expected += deg * pushed[f.base] * w;
  }
  for (const auto& [c, x] : xs) {
    auto it = by_base.find(x.base);
    if (it == by_base.end()) {
      r.classes_ok = false;
      note("class of X over a base class outside the instance set");
      continue;
    }
    const Rational w(1, x.aut);
    r.pullback += it->second->phi * w;
    r.total_integral += x.psi * w;
    r.pushpull += pushed[x.base] * w;
  }
  return r;
}

TypedDiagram numbered(const Diagram& d, const std::vector<int>& perm, int inputs) {
  std::vector<int> in(perm.begin(), perm.begin() + inputs);
  std::vector<int> out(perm.begin() + inputs, perm.end());
  return TypedDiagram(d, in, out);
}

}  // namespace

namespace {

CoveringReport forget_numbering_report(const std::vector<OpenEntry>& untyped,
                                       const std::vector<OpenEntry>& typed, int legs, int inputs) {
  std::vector<Fibre> fibres;
  std::map<Code, TotalClass> seen;
  for (const OpenEntry& e : untyped) {
    const Diagram& y = e.representative.base();
    Fibre f{e.code.code, e.code.aut_order, class_weight(e.code.code, 1), {}};
    std::vector<int> perm(legs);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const CanonicalCode c = canonical_code(numbered(y, perm, inputs));
      f.objects.push_back(c.code);
      seen.emplace(c.code, TotalClass{c.aut_order, f.base, class_weight(c.code, 2)});
    } while (std::next_permutation(perm.begin(), perm.end()));
    fibres.push_back(std::move(f));
  }

  // Typed classes enumerated directly, then the first `inputs` outputs
  // renamed as inputs.
  std::map<Code, TotalClass> total;
  for (const OpenEntry& e : typed) {
    const Diagram& x = e.representative.base();
    const CanonicalCode c = canonical_code(numbered(x, e.representative.outputs(), inputs));
    total.emplace(c.code, TotalClass{c.aut_order, canonical_code(x).code, class_weight(c.code, 2)});
  }
  return evaluate("forget-numbering F(" + std::to_string(inputs) + "," +
                      std::to_string(legs - inputs) + ")",
                  static_cast<std::uint64_t>(factorial(static_cast<unsigned>(legs)).get_num().get_ui()),
                  fibres, seen, total);
}

void check_legs(int legs) {
  if (legs < 0) fail(ErrorCode::invalid_argument, "negative leg count");
  if (legs > 8) fail(ErrorCode::limit, "forget-numbering check limited to 8 legs");
}

}  // namespace

CoveringReport check_forget_numbering(const ColourTable& table, int legs, int inputs,
                                      int max_degree, int max_vertices) {
  check_legs(legs);
  if (inputs < 0 || inputs > legs) fail(ErrorCode::invalid_argument, "input count out of range");
  return forget_numbering_report(enumerate_open(table, legs, max_degree, false, false, max_vertices),
                                 enumerate_open(table, legs, max_degree, true, false, max_vertices),
                                 legs, inputs);
}

std::vector<CoveringReport> check_forget_numbering_splits(const ColourTable& table, int legs,
                                                          int max_degree, int max_vertices) {
  check_legs(legs);
  const auto untyped = enumerate_open(table, legs, max_degree, false, false, max_vertices);
  const auto typed = enumerate_open(table, legs, max_degree, true, false, max_vertices);
  std::vector<CoveringReport> out;
  for (int m = 0; m <= legs; ++m) out.push_back(forget_numbering_report(untyped, typed, legs, m));
  return out;
}

Cut cut_along_root(const Diagram& psi) {
  if (!psi.endpoints().empty()) fail(ErrorCode::invalid_argument, "cutting needs a closed diagram");
  const auto& vs = psi.vertices();
  std::vector<HalfEdge> cut;
  for (const Vertex& v : vs) {
    if (!v.root) continue;
    for (HalfEdge h : v.slots) {
      const HalfEdge m = psi.mate(h);
      const bool internal = vs[psi.owner(m).index].root && (psi.tag(h) & kRootEdgeTag);
      if (!internal) cut.push_back(h);
    }
  }
  const int n = static_cast<int>(cut.size());

  auto part = [&](bool root_side) {
    std::vector<int> id(psi.half_edge_count(), -1);
    std::vector<Vertex> out_vs;
    int next = 0;
    for (const Vertex& v : vs) {
      if (v.root != root_side) continue;
      Vertex w = v;
      for (HalfEdge& h : w.slots) h = id[h] = next++;
      out_vs.push_back(std::move(w));
    }
    std::vector<HalfEdge> endpoints(n);
    for (int i = 0; i < n; ++i) endpoints[i] = next++;
    std::vector<HalfEdge> mate(next, -1);
    std::vector<int> tags(next, 0);
    std::map<HalfEdge, int> cut_index;
    for (int i = 0; i < n; ++i) cut_index[cut[i]] = i;
    for (const Vertex& v : vs) {
      if (v.root != root_side) continue;
      for (HalfEdge h : v.slots) {
        if (root_side && cut_index.count(h)) {
          const int e = endpoints[cut_index[h]];
          mate[id[h]] = e;
          mate[e] = id[h];
          continue;
        }
        const HalfEdge m = psi.mate(h);
        if (!root_side && vs[psi.owner(m).index].root) {
          const int e = endpoints[cut_index.at(m)];
          mate[id[h]] = e;
          mate[e] = id[h];
          continue;
        }
        mate[id[h]] = id[m];
        tags[id[h]] = psi.tag(h);
      }
    }
    if (!root_side) {
      // Cut edges joining two root half-edges become bare edges.
      for (int i = 0; i < n; ++i) {
        const HalfEdge m = psi.mate(cut[i]);
        auto it = cut_index.find(m);
        if (it == cut_index.end()) continue;
        mate[endpoints[i]] = endpoints[it->second];
      }
    }
    return Diagram(std::move(out_vs), std::move(endpoints), std::move(mate), std::move(tags));
  };
  return {part(true), part(false)};
}

CoveringReport check_composition(const ColourTable& table, const Diagram& gamma, int max_degree,
                                 int max_vertices) {
  const int n = static_cast<int>(gamma.leg_count());
  if (n > 8) fail(ErrorCode::limit, "composition check limited to 8 legs");
  const int own = degree(gamma);
  const int gv = static_cast<int>(gamma.vertices().size());
  const Diagram marked = mark_as_root(gamma);

  auto pair_code = [](const CanonicalCode& a, const CanonicalCode& b) {
    Code c = a.code;
    c.push_back(0xff);
    c.insert(c.end(), b.code.begin(), b.code.end());
    return c;
  };

  std::vector<Fibre> fibres;
  std::map<Code, TotalClass> seen;
  std::string trouble;
  const Enumeration base = enumerate_closed(table, gamma, max_degree, {false, false, max_vertices});
  for (const EnumEntry& e : base.entries) {
    const Diagram& psi = e.representative;
    if (static_cast<int>(psi.vertices().size()) > max_vertices) continue;
    Fibre f{e.code.code, e.code.aut_order, class_weight(e.code.code, 3), {}};
    const Cut pieces = cut_along_root(psi);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      // Cut i becomes input perm[i] of the root and output perm[i] of the rest.
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[perm[i]] = i;
      const TypedDiagram g1(pieces.root, order, {});
      const TypedDiagram f1(pieces.rest, {}, order);
      const CanonicalCode a = canonical_code(g1), b = canonical_code(f1);
      const Code c = pair_code(a, b);
      f.objects.push_back(c);
      seen.emplace(c, TotalClass{a.aut_order * b.aut_order, f.base, class_weight(c, 4)});
      if (trouble.empty() && canonical_code(forget_numbering(compose(g1, f1))).code != f.base)
        trouble = "recomposing a cut does not give the diagram back";
    } while (std::next_permutation(perm.begin(), perm.end()));
    fibres.push_back(std::move(f));
  }

  // X directly: numberings of G times typed diagrams of F_empty(0, n).
  std::map<Code, std::pair<TypedDiagram, CanonicalCode>> numberings;
  {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      const TypedDiagram g1 = numbered(marked, perm, n);
      CanonicalCode c = canonical_code(g1);
      numberings.emplace(c.code, std::pair{g1, c});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::map<Code, TotalClass> total;
  if (max_degree >= own && max_vertices >= gv) {
    for (const OpenEntry& phi : enumerate_open(table, n, max_degree - own, true, false, max_vertices - gv)) {
      if (gv + static_cast<int>(phi.representative.base().vertices().size()) > max_vertices) continue;
      for (const auto& [key, g1] : numberings) {
        const Code c = pair_code(g1.second, phi.code);
        const Code y = canonical_code(forget_numbering(compose(g1.first, phi.representative))).code;
        total.emplace(c, TotalClass{g1.second.aut_order * phi.code.aut_order, y, class_weight(c, 4)});
      }
    }
  }

  CoveringReport r = evaluate("composition over " + std::to_string(n) + "-leg root",
                              static_cast<std::uint64_t>(factorial(static_cast<unsigned>(n)).get_num().get_ui()),
                              fibres, seen, total);
  if (!trouble.empty()) {
    r.push_ok = false;
    r.message = trouble;
  }
  return r;
}

CoveringReport check_edge_colouring(const AlgebraSpec& a, const ColourTable& table, int max_degree,
                                    int max_vertices) {
  if (!a.exact() || !a.orthonormal())
    fail(ErrorCode::incompatible, "edge-colouring check needs an exact orthonormal algebra");
  std::vector<Fibre> fibres;
  std::map<Code, TotalClass> seen;
  bool push_ok = true;
  for (const EnumEntry& e : enumerate_closed(table, std::nullopt, max_degree, {false, false, max_vertices}).entries) {
    const Diagram& y = e.representative;
    if (static_cast<int>(y.vertices().size()) > max_vertices) continue;
    Fibre f{e.code.code, e.code.aut_order, closed_amplitude<Rational>(y, a, &table), {}};
    const TypedDiagram closed(y, {}, {});
    Rational sum(0);
    for (const EdgeColouring& eta : expand_colourings(y, a.dim())) {
      const CanonicalCode c = canonical_code(tag_colouring(y, eta));
      f.objects.push_back(c.code);
      const Rational amp = amplitude_coloured<Rational>(closed, eta, a, &table).data[0];
      sum += amp;
      auto [it, inserted] = seen.emplace(c.code, TotalClass{c.aut_order, f.base, amp});
      if (!inserted && it->second.psi != amp) push_ok = false;
    }
    if (sum != f.phi) push_ok = false;
    fibres.push_back(std::move(f));
  }
  CoveringReport r = evaluate("edge-colouring N=" + std::to_string(a.dim()), 0, fibres, seen, {});
  r.push_ok = push_ok;
  if (!push_ok && r.message.empty()) r.message = "coloured amplitudes do not sum to the amplitude";
  return r;
}

}  // namespace feyn
