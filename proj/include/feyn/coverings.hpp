#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "feyn/algebra.hpp"
#include "feyn/colour_table.hpp"
#include "feyn/diagram.hpp"
#include "feyn/rational.hpp"

namespace feyn {

// Outcome of checking one groupoid covering pi: X -> Y on a finite union of
// fibres. Functions on X and Y are class functions; alongside the
// pull-back, Fubini and push-pull identities the report records whether
// every fibre had the expected object count and whether each class over y
// occurs |Aut y| / |Aut x| times in the fibre.
struct CoveringReport {
  std::string name;
  std::uint64_t degree = 0;  // 0 when the fibre size varies
  std::size_t base_classes = 0;
  std::size_t total_classes = 0;
  bool fibres_ok = true;
  bool cardinality_ok = true;
  bool classes_ok = true;  // fibre classes agree with an independent enumeration of X
  bool push_ok = true;     // push-forward agrees with a known closed form, when there is one

  Rational base_integral;      // int_Y phi
  Rational pullback;           // int_X pi^* phi
  Rational pullback_expected;  // sum_y deg(y) phi(y) / |Aut y|
  Rational pushed;             // int_Y pi_* psi
  Rational total_integral;     // int_X psi
  Rational pushpull;           // int_X pi^* pi_* psi
  Rational pushpull_expected;  // sum_y deg(y) (pi_* psi)(y) / |Aut y|
  std::string message;

  bool pullback_ok() const { return pullback == pullback_expected; }
  bool fubini_ok() const { return pushed == total_integral; }
  bool pushpull_ok() const { return pushpull == pushpull_expected; }
  bool ok() const {
    return fibres_ok && cardinality_ok && classes_ok && push_ok && pullback_ok() && fubini_ok() &&
           pushpull_ok();
  }
};

// F(m, n) -> F(m + n): typed diagrams with `legs` endpoints, `inputs` of
// them inputs, over untyped diagrams with at most max_vertices vertices.
CoveringReport check_forget_numbering(const ColourTable& table, int legs, int inputs,
                                      int max_degree, int max_vertices);
// The same for every split of the legs into inputs and outputs.
std::vector<CoveringReport> check_forget_numbering_splits(const ColourTable& table, int legs,
                                                          int max_degree, int max_vertices);

// pi^{-1}(G) x F_empty(0, n) -> F_G(0) by composition, over closed diagrams
// containing G of degree at most max_degree and at most max_vertices
// vertices. Fibres are found by cutting each diagram along G.
CoveringReport check_composition(const ColourTable& table, const Diagram& gamma, int max_degree,
                                 int max_vertices);

// Edge-coloured closed diagrams over closed diagrams, psi the coloured
// amplitude and phi the amplitude. Needs an exact orthonormal algebra.
CoveringReport check_edge_colouring(const AlgebraSpec& a, const ColourTable& table, int max_degree,
                                    int max_vertices);

// Splits a closed diagram along its root sub-diagram: the root part with
// one endpoint per cut half-edge, the rest with the matching endpoints, in
// the same order.
struct Cut {
  Diagram root;
  Diagram rest;
};
Cut cut_along_root(const Diagram& psi);

}  // namespace feyn
