#pragma once

#include <cstdint>
#include <string>

#include "feyn/algebra.hpp"
#include "feyn/colour_table.hpp"
#include "feyn/diagram.hpp"

namespace feyn {

struct VerifyReport {
  bool pass = true;
  std::string text;  // one line per check
};

// Exact algebra for a table: identity pairing (or a random positive-definite
// one), and tensors for every ordinary colour whose entries are small
// rationals with the symmetry of the colour's kind.
AlgebraSpec sample_algebra(const ColourTable& table, int dim, std::uint64_t seed,
                           bool orthonormal = true);

// Pairing moments against Gauss-Hermite quadrature and the moment
// recursion, for all monomials up to max_degree in dimensions 1..max_dim
// and `pairings` random positive-definite pairings per dimension.
VerifyReport verify_wick(int max_dim, int pairings, int max_degree, std::uint64_t seed,
                         double tolerance = 1e-9);

VerifyReport verify_frt(const Diagram& g, const AlgebraSpec& a, const ColourTable& table,
                        bool with_potential, int max_degree, bool exact, double tolerance = 1e-9);

// Z = exp(F), log Z = F and the symmetric power factorisation for the
// counting series of a table.
VerifyReport verify_expfz(const ColourTable& table, int max_degree);

// dZ/dx = <<special star>>_x for every ordinary colour, and the second
// derivatives with their e_1! e_2! factor; with an exact algebra also for
// amplitudes.
VerifyReport verify_derivative(const ColourTable& table, int max_degree,
                               const AlgebraSpec* exact_algebra = nullptr);

// Reduced series times Z equals the full series of diagrams containing root.
VerifyReport verify_reduced(const ColourTable& table, const Diagram& root, int max_degree);

// Pull-back, Fubini and push-pull on the forget-numbering coverings (up to
// four legs), the composition coverings over the table's special stars and
// the edge-colouring covering, for instances with at most max_vertices
// vertices and at most 14 half-edges.
VerifyReport verify_fubini(const ColourTable& table, const AlgebraSpec* algebra, int max_degree,
                           int max_vertices);

// Random polynomials phi: the star sums against phi(v).
VerifyReport verify_taylor(int count, int max_dim, int max_degree, std::uint64_t seed,
                           double tolerance = 1e-10);

}  // namespace feyn
