#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "feyn/colour_table.hpp"
#include "feyn/diagram.hpp"
#include "feyn/enumerate.hpp"
#include "feyn/polynomial.hpp"
#include "feyn/rational.hpp"
#include "feyn/series.hpp"
#include "feyn/tensor.hpp"

namespace feyn {

// Entries of a vertex tensor, indexed by slot in slot order: coupon inputs
// first, then outputs. Exact values are present when every entry was given
// as an integer or a fraction.
struct VertexTensor {
  ColourShape shape;
  std::vector<double> real;
  std::optional<std::vector<Rational>> exact;

  template <class T>
  const std::vector<T>& values() const;
};

// Dimension, pairing g_ij and the vertex tensors of a Feynman algebra.
class AlgebraSpec {
 public:
  AlgebraSpec() = default;
  AlgebraSpec(int dim, std::vector<double> pairing,
              std::optional<std::vector<Rational>> exact_pairing = std::nullopt);
  static AlgebraSpec exact_spec(int dim, const std::vector<Rational>& pairing);

  void add_tensor(const std::string& colour, ColourShape shape, std::vector<double> real,
                  std::optional<std::vector<Rational>> exact = std::nullopt);
  void add_tensor_exact(const std::string& colour, ColourShape shape,
                        const std::vector<Rational>& exact);
  void set_bold(const std::string& ordinary, const std::string& special);

  // Symmetry and invertibility of g, cyclic and symmetric invariance of the
  // tensors; throws on violation.
  void validate() const;

  int dim() const { return dim_; }
  bool exact() const;

  template <class T>
  const std::vector<T>& pairing() const;
  template <class T>
  const std::vector<T>& copairing() const;

  // Tensor of a colour; a special colour resolves to its ordinary partner
  // through the spec's own partner map, then the table, then the trailing
  // '*' naming convention.
  const VertexTensor& tensor_for(const std::string& colour, const ColourTable* table = nullptr) const;
  const std::map<std::string, VertexTensor>& tensors() const { return tensors_; }
  const std::map<std::string, std::string>& bold() const { return bold_; }

  bool orthonormal() const;
  // Same algebra written in a basis where g is the identity (Cholesky
  // g = L L^T, lower indices transformed by L^{-T}, upper ones by L^T).
  AlgebraSpec orthonormalized() const;

 private:
  void compute_copairing();

  int dim_ = 1;
  std::vector<double> g_{1.0};
  std::vector<double> ginv_{1.0};
  std::optional<std::vector<Rational>> g_exact_ = std::vector<Rational>{Rational(1)};
  std::optional<std::vector<Rational>> ginv_exact_ = std::vector<Rational>{Rational(1)};
  std::map<std::string, VertexTensor> tensors_;
  std::map<std::string, std::string> bold_;
};

// Z(t): a tensor whose indices are the outputs of t followed by its inputs.
// Every edge contributes g^{ab}, g_{ab} or a Kronecker delta according to
// the variance of its two ends (vertex slots and diagram outputs are
// lower, coupon outputs and diagram inputs are upper).
template <class T>
Tensor<T> amplitude(const TypedDiagram& t, const AlgebraSpec& a, const ColourTable* table = nullptr);

// Scalar amplitude of a closed diagram.
template <class T>
T closed_amplitude(const Diagram& d, const AlgebraSpec& a, const ColourTable* table = nullptr);

// P_G(v) = Z(G numbered as (n,0))(v, ..., v) as a polynomial in v.
template <class T>
Polynomial<T> polynomial_P(const Diagram& g, const AlgebraSpec& a, const ColourTable* table = nullptr);

template <class T>
struct PotentialTerm {
  VariableKey variable;
  Polynomial<T> polynomial;  // P_star / |Aut star|
};

// S(x; v) = sum over ordinary colours of x * P_star(v) / |Aut star|.
template <class T>
std::vector<PotentialTerm<T>> potential_S(const AlgebraSpec& a, const ColourTable& table);

// Sum of Z(entry) x^monomial / |Aut| over an enumeration.
template <class T>
Series<T> integrate_amplitudes(const Enumeration& e, const AlgebraSpec& a, const ColourTable* table);

// <<G>> (closures only, truncated at the degree of G) or, with potential,
// the sum over all closed diagrams containing G up to total degree d.
template <class T>
Series<T> expectation_value(const Diagram& g, const AlgebraSpec& a, const ColourTable& table,
                            bool with_potential, int d);

template <class T>
Series<T> partition_function(const AlgebraSpec& a, const ColourTable& table, int d);
template <class T>
Series<T> free_energy(const AlgebraSpec& a, const ColourTable& table, int d);

// Edge colourings are indexed like Diagram::edges().
using EdgeColouring = std::vector<int>;

// Amplitude with each edge factor replaced by e_c (x) e_c for its colour c.
// Needs an orthonormal pairing.
template <class T>
Tensor<T> amplitude_coloured(const TypedDiagram& t, const EdgeColouring& eta, const AlgebraSpec& a,
                             const ColourTable* table = nullptr);

std::vector<EdgeColouring> expand_colourings(const Diagram& d, int dim);

// Copy of d with edge k tagged 1 + eta[k], so that isomorphisms respect
// the colouring.
Diagram tag_colouring(const Diagram& d, const EdgeColouring& eta);

}  // namespace feyn
