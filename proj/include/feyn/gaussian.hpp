#pragma once

#include <map>
#include <optional>
#include <vector>

#include "feyn/algebra.hpp"
#include "feyn/polynomial.hpp"
#include "feyn/series.hpp"
#include "feyn/tensor.hpp"

namespace feyn {

inline constexpr int kMaxWickOrder = 12;

// Gaussian measure proportional to exp(-<v,v>/2) for a positive-definite
// pairing g; its covariance is the copairing g^{-1}.
class GaussianSpec {
 public:
  GaussianSpec(int dim, std::vector<double> pairing,
               std::optional<std::vector<Rational>> exact = std::nullopt);
  static GaussianSpec from_algebra(const AlgebraSpec& a);

  int dim() const { return pairing_.dim(); }
  template <class T>
  const std::vector<T>& covariance() const {
    return pairing_.copairing<T>();
  }
  const std::vector<double>& pairing() const { return pairing_.pairing<double>(); }
  bool exact() const;

 private:
  AlgebraSpec pairing_;
};

// E[v^{i_1} ... v^{i_k}] as a tensor, summed over all perfect pairings.
template <class T>
Tensor<T> wick_moment(int k, const GaussianSpec& g);

// E[v^e] by explicit enumeration of the pairings of the factors.
template <class T>
T monomial_moment_pairings(const std::vector<int>& e, const GaussianSpec& g);

// E[v^e] through E[v_i m] = sum_j g^{ij} E[d_j m], memoised.
template <class T>
class MomentTable {
 public:
  explicit MomentTable(const GaussianSpec& g) : n_(g.dim()), cov_(g.covariance<T>()) {}
  T moment(const std::vector<int>& e);
  T average(const Polynomial<T>& p);

 private:
  int n_;
  std::vector<T> cov_;
  std::map<std::vector<int>, T> memo_;
};

// Tensor-product Gauss-Hermite quadrature after whitening v = L u with
// L L^T = g^{-1}; exact for polynomials up to the degree it was sized for.
double quadrature_average(const Polynomial<double>& p, const GaussianSpec& g);

// 1D nodes and weights for the standard normal, by Golub-Welsch.
void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights);

// <f e^S>, expanded as a series in the coupling variables up to degree d.
template <class T>
Series<T> average_with_potential(const Polynomial<T>& f, const AlgebraSpec& a,
                                 const ColourTable& table, int d);

template <class T>
struct FrtReport {
  bool match = false;
  Series<T> lhs;
  Series<T> rhs;
  double max_diff = 0;
};

// Groupoid side <<G>> (or <<G>>_x) against the Gaussian side
// <P_G / |Aut G| (e^S)>, coefficient by coefficient.
template <class T>
FrtReport<T> frt_check(const Diagram& g, const AlgebraSpec& a, const ColourTable& table,
                       bool with_potential, int d, double tolerance = 1e-9);

template <class T>
struct TaylorReport {
  T groupoid_sum{};
  T coloured_sum{};
  T direct{};
};

// Sum over star diagrams (one special n-vertex carrying D^n phi(0), n
// vertices carrying v) of amplitude / |Aut|, next to the coloured-edge
// version and phi(v) itself.
template <class T>
TaylorReport<T> taylor_stars(const Polynomial<T>& phi, const std::vector<T>& v);

}  // namespace feyn
