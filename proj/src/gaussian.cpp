#include "feyn/gaussian.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "feyn/error.hpp"
#include "feyn/iso.hpp"

namespace feyn {

GaussianSpec::GaussianSpec(int dim, std::vector<double> pairing,
                           std::optional<std::vector<Rational>> exact)
    : pairing_(dim, pairing, exact) {
  for (int k = 1; k <= dim; ++k) {
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m(i, j) = pairing[i * dim + j];
    if (!(m.determinant() > 0))
      fail(ErrorCode::invalid_argument, "Gaussian pairing is not positive definite");
  }
}

GaussianSpec GaussianSpec::from_algebra(const AlgebraSpec& a) {
  std::optional<std::vector<Rational>> exact;
  try {
    exact = a.pairing<Rational>();
  } catch (const Error&) {
  }
  return GaussianSpec(a.dim(), a.pairing<double>(), exact);
}

bool GaussianSpec::exact() const {
  try {
    pairing_.pairing<Rational>();
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace {

// Visits every perfect pairing of {0..k-1} as a list of pairs.
void for_each_pairing_of(int k, const std::function<void(const std::vector<std::pair<int, int>>&)>& f) {
  std::vector<char> used(k, 0);
  std::vector<std::pair<int, int>> pairs;
  std::function<void()> rec = [&]() {
    int first = 0;
    while (first < k && used[first]) ++first;
    if (first == k) {
      f(pairs);
      return;
    }
    used[first] = 1;
    for (int j = first + 1; j < k; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      pairs.emplace_back(first, j);
      rec();
      pairs.pop_back();
      used[j] = 0;
    }
    used[first] = 0;
  };
  rec();
}

}  // namespace

template <class T>
Tensor<T> wick_moment(int k, const GaussianSpec& g) {
  if (k < 0) fail(ErrorCode::invalid_argument, "negative moment order");
  if (k > kMaxWickOrder)
    fail(ErrorCode::limit, "moment order above " + std::to_string(kMaxWickOrder));
  const int n = g.dim();
  const std::vector<T>& c = g.covariance<T>();
  Tensor<T> out(n, k);
  if (k % 2 == 1) return out;
  if (k == 0) {
    out.data[0] = T(1);
    return out;
  }
  std::vector<int> idx(k);
  for_each_pairing_of(k, [&](const std::vector<std::pair<int, int>>& pairs) {
    std::fill(idx.begin(), idx.end(), 0);
    do {
      T prod(1);
      for (const auto& [a, b] : pairs) prod *= c[idx[a] * n + idx[b]];
      out.data[out.offset(idx)] += prod;
    } while (next_index(idx, n));
  });
  return out;
}

template <class T>
T monomial_moment_pairings(const std::vector<int>& e, const GaussianSpec& g) {
  std::vector<int> factors;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) factors.push_back(static_cast<int>(i));
  const int k = static_cast<int>(factors.size());
  if (k % 2 == 1) return T(0);
  if (k > 16) fail(ErrorCode::limit, "monomial degree too large for pairing enumeration");
  const int n = g.dim();
  const std::vector<T>& c = g.covariance<T>();
  T total(0);
  for_each_pairing_of(k, [&](const std::vector<std::pair<int, int>>& pairs) {
    T prod(1);
    for (const auto& [a, b] : pairs) prod *= c[factors[a] * n + factors[b]];
    total += prod;
  });
  return total;
}

template <class T>
T MomentTable<T>::moment(const std::vector<int>& e) {
  const int total = std::accumulate(e.begin(), e.end(), 0);
  if (total % 2 == 1) return T(0);
  if (total == 0) return T(1);
  if (auto it = memo_.find(e); it != memo_.end()) return it->second;
  const int n = n_;
  std::size_t i = 0;
  while (e[i] == 0) ++i;
  std::vector<int> rest(e);
  --rest[i];
  T value(0);
  for (int j = 0; j < n; ++j) {
    if (rest[j] == 0 || is_zero(cov_[i * n + j])) continue;
    std::vector<int> lower(rest);
    --lower[j];
    value += cov_[i * n + j] * T(rest[j]) * moment(lower);
  }
  memo_.emplace(e, value);
  return value;
}

template <class T>
T MomentTable<T>::average(const Polynomial<T>& p) {
  T total(0);
  for (const auto& [e, c] : p.terms()) total += c * moment(e);
  return total;
}

void gauss_hermite(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) fail(ErrorCode::invalid_argument, "quadrature needs at least one node");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) J(k - 1, k) = J(k, k - 1) = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = es.eigenvalues()(k);
    const double v0 = es.eigenvectors()(0, k);
    weights[k] = v0 * v0;
  }
}

double quadrature_average(const Polynomial<double>& p, const GaussianSpec& g) {
  const int n = g.dim();
  if (n > 4) fail(ErrorCode::limit, "quadrature limited to dimension 4");
  const int deg = p.degree();
  if (deg > 24) fail(ErrorCode::limit, "quadrature limited to degree 24");
  const int order = (deg + 2) / 2 + 2;
  std::vector<double> x, w;
  gauss_hermite(order, x, w);

  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cov(i, j) = g.covariance<double>()[i * n + j];
  const Eigen::MatrixXd L = cov.llt().matrixL();

  std::vector<int> node(n, 0);
  std::vector<double> u(n), v(n);
  double total = 0;
  do {
    double weight = 1;
    for (int i = 0; i < n; ++i) {
      u[i] = x[node[i]];
      weight *= w[node[i]];
    }
    for (int i = 0; i < n; ++i) {
      v[i] = 0;
      for (int j = 0; j <= i; ++j) v[i] += L(i, j) * u[j];
    }
    total += weight * p(v);
  } while (next_index(node, order));
  return total;
}

template <class T>
Series<T> average_with_potential(const Polynomial<T>& f, const AlgebraSpec& a,
                                 const ColourTable& table, int d) {
  if (d < 0) fail(ErrorCode::invalid_argument, "negative truncation");
  if (d > kMaxWickOrder) fail(ErrorCode::limit, "truncation above " + std::to_string(kMaxWickOrder));
  const GaussianSpec g = GaussianSpec::from_algebra(a);
  MomentTable<T> moments(g);
  const std::vector<PotentialTerm<T>> terms = potential_S<T>(a, table);
  Series<T> out(d);
  std::vector<int> e(terms.size(), 0);
  std::function<void(std::size_t, int, const Polynomial<T>&, const T&)> rec =
      [&](std::size_t i, int left, const Polynomial<T>& prod, const T& inv_fact) {
        if (i == terms.size()) {
          Monomial m;
          for (std::size_t k = 0; k < terms.size(); ++k)
            if (e[k] > 0) m.emplace_back(terms[k].variable, e[k]);
          std::sort(m.begin(), m.end());
          out.add_term(m, T(moments.average(prod) * inv_fact));
          return;
        }
        const int grade = terms[i].variable.grade();
        Polynomial<T> p = prod;
        T fact = inv_fact;
        for (int k = 0; k * grade <= left; ++k) {
          e[i] = k;
          rec(i + 1, left - k * grade, p, fact);
          p = p * terms[i].polynomial;
          fact = T(fact / T(k + 1));
        }
        e[i] = 0;
      };
  rec(0, d, f, T(1));
  return out;
}

namespace {

double coefficient_diff(const Rational& a, const Rational& b) { return std::abs(Rational(a - b).get_d()); }
double coefficient_diff(double a, double b) { return std::abs(a - b); }

template <class T>
bool close(const T& a, const T& b, double tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    return a == b;
  } else {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  }
}

}  // namespace

template <class T>
FrtReport<T> frt_check(const Diagram& g, const AlgebraSpec& a, const ColourTable& table,
                       bool with_potential, int d, double tolerance) {
  const int deg = degree(g);
  const int trunc = with_potential ? d : deg;
  if (trunc < deg) fail(ErrorCode::invalid_argument, "truncation below the degree of the diagram");
  FrtReport<T> r;
  r.lhs = expectation_value<T>(g, a, table, with_potential, trunc);

  const std::uint64_t aut = canonical_code(g).aut_order;
  const Polynomial<T> f = polynomial_P<T>(g, a, &table) * from_rational<T>(Rational(1, aut));
  Series<T> avg(0);
  if (with_potential) {
    avg = average_with_potential<T>(f, a, table, trunc - deg);
  } else {
    MomentTable<T> moments(GaussianSpec::from_algebra(a));
    avg = Series<T>::constant(moments.average(f), 0);
  }
  // The ordinary vertices of g carry their own coupling variables.
  const Monomial own = monomial_of(g);
  r.rhs = Series<T>(trunc);
  for (const auto& [m, c] : avg.terms()) r.rhs.add_term(monomial_mul(m, own), c);

  r.match = true;
  std::map<Monomial, std::pair<T, T>> both;
  for (const auto& [m, c] : r.lhs.terms()) both[m].first = c;
  for (const auto& [m, c] : r.rhs.terms()) both[m].second = c;
  for (auto& [m, lr] : both) {
    r.max_diff = std::max(r.max_diff, coefficient_diff(lr.first, lr.second));
    if (!close(lr.first, lr.second, tolerance)) r.match = false;
  }
  return r;
}

template <class T>
TaylorReport<T> taylor_stars(const Polynomial<T>& phi, const std::vector<T>& v) {
  const int n = phi.vars();
  if (static_cast<int>(v.size()) != n) fail(ErrorCode::invalid_argument, "point has the wrong dimension");
  const int deg = phi.degree();
  if (deg > 10) fail(ErrorCode::limit, "Taylor check limited to degree 10");

  std::vector<double> id(n * n, 0.0);
  std::vector<Rational> id_exact(n * n, Rational(0));
  for (int i = 0; i < n; ++i) {
    id[i * n + i] = 1;
    id_exact[i * n + i] = 1;
  }
  TaylorReport<T> r;
  r.groupoid_sum = T(0);
  r.coloured_sum = T(0);
  r.direct = phi(v);
  for (int k = 0; k <= deg; ++k) {
    AlgebraSpec a(n, id, id_exact);
    const std::string black = "D" + std::to_string(k);
    const Tensor<T> dk = phi.derivative_tensor(k);
    if constexpr (std::is_same_v<T, Rational>) {
      a.add_tensor_exact(black, {VertexKind::symmetric, 0, k}, dk.data);
      a.add_tensor_exact("v", {VertexKind::coupon, 0, 1}, v);
    } else {
      a.add_tensor(black, {VertexKind::symmetric, 0, k}, dk.data);
      a.add_tensor("v", {VertexKind::coupon, 0, 1}, v);
    }

    std::vector<Vertex> vertices(1 + k);
    vertices[0].kind = VertexKind::symmetric;
    vertices[0].colour = black;
    vertices[0].special = true;
    std::vector<HalfEdge> mate(2 * k);
    for (int s = 0; s < k; ++s) {
      vertices[0].slots.push_back(s);
      Vertex& leaf = vertices[1 + s];
      leaf.kind = VertexKind::coupon;
      leaf.colour = "v";
      leaf.special = true;
      leaf.slots = {k + s};
      mate[s] = k + s;
      mate[k + s] = s;
    }
    const Diagram star_k(vertices, {}, mate);
    const T inv_aut = from_rational<T>(Rational(1, canonical_code(star_k).aut_order));
    r.groupoid_sum += closed_amplitude<T>(star_k, a) * inv_aut;

    // Coloured classes: colourings up to isomorphism of coloured diagrams.
    std::map<std::vector<std::uint8_t>, std::pair<EdgeColouring, std::uint64_t>> classes;
    for (const EdgeColouring& eta : expand_colourings(star_k, n)) {
      const CanonicalCode code = canonical_code(tag_colouring(star_k, eta));
      classes.emplace(code.code, std::pair{eta, code.aut_order});
    }
    const TypedDiagram closed(star_k, {}, {});
    for (const auto& [code, entry] : classes) {
      const T amp = amplitude_coloured<T>(closed, entry.first, a).data[0];
      r.coloured_sum += amp * from_rational<T>(Rational(1, entry.second));
    }
  }
  return r;
}

#define FEYN_INSTANTIATE(T)                                                                      \
  template Tensor<T> wick_moment<T>(int, const GaussianSpec&);                                  \
  template T monomial_moment_pairings<T>(const std::vector<int>&, const GaussianSpec&);         \
  template class MomentTable<T>;                                                                 \
  template Series<T> average_with_potential<T>(const Polynomial<T>&, const AlgebraSpec&,        \
                                               const ColourTable&, int);                        \
  template FrtReport<T> frt_check<T>(const Diagram&, const AlgebraSpec&, const ColourTable&,    \
                                     bool, int, double);                                        \
  template TaylorReport<T> taylor_stars<T>(const Polynomial<T>&, const std::vector<T>&);

FEYN_INSTANTIATE(double)
FEYN_INSTANTIATE(Rational)

#undef FEYN_INSTANTIATE

}  // namespace feyn
