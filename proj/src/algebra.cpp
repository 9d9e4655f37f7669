#include "feyn/algebra.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "feyn/error.hpp"
#include "feyn/iso.hpp"

namespace feyn {

template <>
const std::vector<double>& VertexTensor::values<double>() const {
  return real;
}

template <>
const std::vector<Rational>& VertexTensor::values<Rational>() const {
  if (!exact) fail(ErrorCode::incompatible, "tensor has no exact entries");
  return *exact;
}

namespace {

std::size_t ipow(int base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

std::optional<std::vector<Rational>> exact_inverse(const std::vector<Rational>& m, int n) {
  std::vector<Rational> a(m), inv(n * n, Rational(0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && sgn(a[piv * n + col]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv[piv * n + j], inv[col * n + j]);
      }
    const Rational p = a[col * n + col];
    for (int j = 0; j < n; ++j) {
      a[col * n + j] /= p;
      inv[col * n + j] /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || sgn(a[i * n + col]) == 0) continue;
      const Rational f = a[i * n + col];
      for (int j = 0; j < n; ++j) {
        a[i * n + j] -= f * a[col * n + j];
        inv[i * n + j] -= f * inv[col * n + j];
      }
    }
  }
  return inv;
}

double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Entry of t after permuting its indices by perm (new index k reads old
// index perm[k]).
void check_invariant(const VertexTensor& t, int dim, const std::vector<int>& perm,
                     const std::string& colour, const char* what) {
  const int n = t.shape.valence();
  const double scale = std::max(1.0, max_abs(t.real));
  std::vector<int> idx(n, 0), moved(n);
  Tensor<double> view(dim, n);
  view.data = t.real;
  do {
    for (int k = 0; k < n; ++k) moved[k] = idx[perm[k]];
    if (std::abs(view(idx) - view(moved)) > 1e-10 * scale)
      fail(ErrorCode::invalid_argument, "tensor '" + colour + "' is not " + what);
  } while (next_index(idx, dim));
}

}  // namespace

AlgebraSpec::AlgebraSpec(int dim, std::vector<double> pairing,
                         std::optional<std::vector<Rational>> exact_pairing)
    : dim_(dim), g_(std::move(pairing)), g_exact_(std::move(exact_pairing)) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "dimension must be positive");
  if (static_cast<int>(g_.size()) != dim * dim)
    fail(ErrorCode::invalid_argument, "pairing must have dim*dim entries");
  if (g_exact_ && static_cast<int>(g_exact_->size()) != dim * dim)
    fail(ErrorCode::invalid_argument, "pairing must have dim*dim entries");
  compute_copairing();
}

AlgebraSpec AlgebraSpec::exact_spec(int dim, const std::vector<Rational>& pairing) {
  std::vector<double> real;
  for (const Rational& q : pairing) real.push_back(q.get_d());
  return AlgebraSpec(dim, std::move(real), pairing);
}

void AlgebraSpec::compute_copairing() {
  Eigen::MatrixXd g(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) g(i, j) = g_[i * dim_ + j];
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(g(i, j) - g(j, i)) > 1e-10 * scale)
        fail(ErrorCode::invalid_argument, "pairing is not symmetric");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0 || s(dim_ - 1) / s(0) < 1e-12)
    fail(ErrorCode::invalid_argument, "pairing is singular or badly conditioned");
  const Eigen::MatrixXd inv = g.inverse();
  ginv_.assign(dim_ * dim_, 0.0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) ginv_[i * dim_ + j] = inv(i, j);
  ginv_exact_.reset();
  if (g_exact_) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < i; ++j)
        if ((*g_exact_)[i * dim_ + j] != (*g_exact_)[j * dim_ + i])
          fail(ErrorCode::invalid_argument, "pairing is not symmetric");
    ginv_exact_ = exact_inverse(*g_exact_, dim_);
    if (!ginv_exact_) fail(ErrorCode::invalid_argument, "pairing is singular");
  }
}

void AlgebraSpec::add_tensor(const std::string& colour, ColourShape shape, std::vector<double> real,
                             std::optional<std::vector<Rational>> exact) {
  if (colour.empty()) fail(ErrorCode::invalid_argument, "empty colour name");
  if (tensors_.count(colour)) fail(ErrorCode::invalid_argument, "duplicate tensor '" + colour + "'");
  const std::size_t size = ipow(dim_, shape.valence());
  if (real.size() != size || (exact && exact->size() != size))
    fail(ErrorCode::invalid_argument, "tensor '" + colour + "' needs " + std::to_string(size) +
                                          " entries");
  tensors_[colour] = VertexTensor{shape, std::move(real), std::move(exact)};
}

void AlgebraSpec::add_tensor_exact(const std::string& colour, ColourShape shape,
                                   const std::vector<Rational>& exact) {
  std::vector<double> real;
  for (const Rational& q : exact) real.push_back(q.get_d());
  add_tensor(colour, shape, std::move(real), exact);
}

void AlgebraSpec::set_bold(const std::string& ordinary, const std::string& special) {
  if (!tensors_.count(ordinary))
    fail(ErrorCode::unknown_colour, "partner of unknown tensor '" + ordinary + "'");
  for (const auto& [o, s] : bold_)
    if (s == special) fail(ErrorCode::invalid_argument, "partner map is not injective");
  bold_[ordinary] = special;
}

void AlgebraSpec::validate() const {
  for (const auto& [colour, t] : tensors_) {
    const int n = t.shape.valence();
    if (t.shape.kind == VertexKind::coupon || n < 2) continue;
    std::vector<int> perm(n);
    if (t.shape.kind == VertexKind::cyclic) {
      for (int k = 0; k < n; ++k) perm[k] = (k + 1) % n;
      check_invariant(t, dim_, perm, colour, "cyclically invariant");
    } else {
      for (int s = 0; s + 1 < n; ++s) {
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[s], perm[s + 1]);
        check_invariant(t, dim_, perm, colour, "symmetric");
      }
    }
  }
}

bool AlgebraSpec::exact() const {
  if (!g_exact_) return false;
  for (const auto& [c, t] : tensors_)
    if (!t.exact) return false;
  return true;
}

template <>
const std::vector<double>& AlgebraSpec::pairing<double>() const {
  return g_;
}
template <>
const std::vector<double>& AlgebraSpec::copairing<double>() const {
  return ginv_;
}
template <>
const std::vector<Rational>& AlgebraSpec::pairing<Rational>() const {
  if (!g_exact_) fail(ErrorCode::incompatible, "algebra has no exact pairing");
  return *g_exact_;
}
template <>
const std::vector<Rational>& AlgebraSpec::copairing<Rational>() const {
  if (!ginv_exact_) fail(ErrorCode::incompatible, "algebra has no exact pairing");
  return *ginv_exact_;
}

const VertexTensor& AlgebraSpec::tensor_for(const std::string& colour, const ColourTable* table) const {
  if (auto it = tensors_.find(colour); it != tensors_.end()) return it->second;
  for (const auto& [o, s] : bold_)
    if (s == colour) return tensors_.at(o);
  if (table) {
    if (auto o = table->ordinary_of(colour)) {
      if (auto it = tensors_.find(*o); it != tensors_.end()) return it->second;
    }
  }
  if (colour.size() > 1 && colour.back() == '*') {
    if (auto it = tensors_.find(colour.substr(0, colour.size() - 1)); it != tensors_.end())
      return it->second;
  }
  fail(ErrorCode::unknown_colour, "algebra has no tensor for colour '" + colour + "'");
}

bool AlgebraSpec::orthonormal() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (std::abs(g_[i * dim_ + j] - (i == j ? 1.0 : 0.0)) > 1e-12) return false;
  return true;
}

AlgebraSpec AlgebraSpec::orthonormalized() const {
  if (orthonormal()) return *this;
  Eigen::MatrixXd g(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) g(i, j) = g_[i * dim_ + j];
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    fail(ErrorCode::incompatible, "an orthonormal real basis needs a positive-definite pairing");
  const Eigen::MatrixXd L = llt.matrixL();
  const Eigen::MatrixXd B = L.transpose().inverse();  // lower indices
  const Eigen::MatrixXd Binv = L.transpose();         // upper indices

  std::vector<double> id(dim_ * dim_, 0.0);
  std::vector<Rational> id_exact(dim_ * dim_, Rational(0));
  for (int i = 0; i < dim_; ++i) {
    id[i * dim_ + i] = 1.0;
    id_exact[i * dim_ + i] = 1;
  }
  AlgebraSpec out(dim_, id, id_exact);
  for (const auto& [colour, t] : tensors_) {
    const int n = t.shape.valence();
    std::vector<Factor<double>> net;
    Tensor<double> src(dim_, n);
    src.data = t.real;
    std::vector<int> vars(n), outv(n);
    std::iota(vars.begin(), vars.end(), 0);
    net.push_back({src, vars});
    for (int s = 0; s < n; ++s) {
      const bool upper = t.shape.kind == VertexKind::coupon && s >= t.shape.inputs;
      Tensor<double> m(dim_, 2);
      // new index first, old index second
      for (int i = 0; i < dim_; ++i)
        for (int a = 0; a < dim_; ++a) m({i, a}) = upper ? Binv(i, a) : B(a, i);
      net.push_back({m, {n + s, s}});
      outv[s] = n + s;
    }
    out.add_tensor(colour, t.shape, contract_network(std::move(net), outv, dim_).data);
  }
  for (const auto& [o, s] : bold_) out.set_bold(o, s);
  return out;
}

namespace {

bool slot_upper(const Vertex& v, int slot) {
  return v.kind == VertexKind::coupon && slot >= v.inputs;
}

template <class T>
Tensor<T> matrix_from(const std::vector<T>& m, int dim) {
  Tensor<T> t(dim, 2);
  t.data = m;
  return t;
}

template <class T>
Tensor<T> delta(int dim) {
  Tensor<T> t(dim, 2);
  for (int i = 0; i < dim; ++i) t({i, i}) = T(1);
  return t;
}

template <class T>
Tensor<T> projector(int dim, int c) {
  Tensor<T> t(dim, 2);
  t({c, c}) = T(1);
  return t;
}

// Tensor network of t; edge_factor(k, upper_a, upper_b) gives the factor
// of edge k of t.base().edges().
template <class T, class EdgeFactor>
Tensor<T> evaluate(const TypedDiagram& t, const AlgebraSpec& a, const ColourTable* table,
                   EdgeFactor edge_factor) {
  const Diagram& d = t.base();
  const int dim = a.dim();
  std::vector<int> upper_endpoint(d.leg_count(), 0);
  for (int e : t.inputs()) upper_endpoint[e] = 1;
  auto is_upper = [&](HalfEdge h) {
    const Owner& o = d.owner(h);
    if (o.is_endpoint) return upper_endpoint[o.index] == 1;
    return slot_upper(d.vertices()[o.index], o.slot);
  };
  std::vector<Factor<T>> net;
  for (const Vertex& v : d.vertices()) {
    const VertexTensor& vt = a.tensor_for(v.colour, table);
    if (vt.shape != v.shape())
      fail(ErrorCode::arity, "tensor for colour '" + v.colour + "' has the wrong shape");
    Tensor<T> tensor(dim, v.valence());
    tensor.data = vt.template values<T>();
    net.push_back({std::move(tensor), v.slots});
  }
  const auto edges = d.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [x, y] = edges[k];
    net.push_back({edge_factor(k, is_upper(x), is_upper(y)), {x, y}});
  }
  std::vector<int> out;
  for (int e : t.outputs()) out.push_back(d.endpoints()[e]);
  for (int e : t.inputs()) out.push_back(d.endpoints()[e]);
  return contract_network(std::move(net), out, dim);
}

}  // namespace

template <class T>
Tensor<T> amplitude(const TypedDiagram& t, const AlgebraSpec& a, const ColourTable* table) {
  const Tensor<T> g = matrix_from(a.pairing<T>(), a.dim());
  const Tensor<T> ginv = matrix_from(a.copairing<T>(), a.dim());
  const Tensor<T> id = delta<T>(a.dim());
  return evaluate<T>(t, a, table, [&](std::size_t, bool ux, bool uy) -> const Tensor<T>& {
    if (ux && uy) return g;
    if (!ux && !uy) return ginv;
    return id;
  });
}

template <class T>
T closed_amplitude(const Diagram& d, const AlgebraSpec& a, const ColourTable* table) {
  if (d.leg_count() != 0) fail(ErrorCode::arity, "diagram is not closed");
  return amplitude<T>(TypedDiagram(d, {}, {}), a, table).data[0];
}

template <class T>
Polynomial<T> polynomial_P(const Diagram& g, const AlgebraSpec& a, const ColourTable* table) {
  const int n = static_cast<int>(g.leg_count());
  const Tensor<T> amp = amplitude<T>(make_typed(g, n), a, table);
  return Polynomial<T>::from_tensor(amp);
}

template <class T>
std::vector<PotentialTerm<T>> potential_S(const AlgebraSpec& a, const ColourTable& table) {
  std::vector<PotentialTerm<T>> out;
  for (const ColourEntry& e : table.ordinary()) {
    const Diagram s = star(e.shape.kind, e.name, e.shape.valence(), false, e.shape.inputs);
    const std::uint64_t aut = canonical_code(s).aut_order;
    Polynomial<T> p = polynomial_P<T>(s, a, &table) * from_rational<T>(Rational(1, aut));
    out.push_back({variable_of(e), std::move(p)});
  }
  return out;
}

template <class T>
Series<T> integrate_amplitudes(const Enumeration& e, const AlgebraSpec& a, const ColourTable* table) {
  Series<T> out(e.max_degree);
  for (const EnumEntry& entry : e.entries) {
    const T amp = closed_amplitude<T>(entry.representative, a, table);
    out.add_term(monomial_of(entry.representative),
                 T(amp * from_rational<T>(Rational(1, entry.code.aut_order))));
  }
  return out;
}

template <class T>
Series<T> expectation_value(const Diagram& g, const AlgebraSpec& a, const ColourTable& table,
                            bool with_potential, int d) {
  if (!with_potential) {
    const Enumeration e = enumerate_closed(ColourTable(), g, degree(g));
    return integrate_amplitudes<T>(e, a, &table);
  }
  return integrate_amplitudes<T>(enumerate_closed(table, g, d), a, &table);
}

template <class T>
Series<T> partition_function(const AlgebraSpec& a, const ColourTable& table, int d) {
  return integrate_amplitudes<T>(enumerate_closed(table, std::nullopt, d), a, &table);
}

template <class T>
Series<T> free_energy(const AlgebraSpec& a, const ColourTable& table, int d) {
  return integrate_amplitudes<T>(enumerate_closed(table, std::nullopt, d, {true, false}), a,
                                 &table);
}

template <class T>
Tensor<T> amplitude_coloured(const TypedDiagram& t, const EdgeColouring& eta, const AlgebraSpec& a,
                             const ColourTable* table) {
  if (!a.orthonormal())
    fail(ErrorCode::incompatible, "edge colourings need an orthonormal pairing; orthonormalize first");
  const auto edges = t.base().edges();
  if (eta.size() != edges.size()) fail(ErrorCode::invalid_argument, "colouring has the wrong length");
  std::vector<Tensor<T>> proj;
  for (int c = 0; c < a.dim(); ++c) proj.push_back(projector<T>(a.dim(), c));
  for (int c : eta)
    if (c < 0 || c >= a.dim()) fail(ErrorCode::invalid_argument, "edge colour out of range");
  return evaluate<T>(t, a, table, [&](std::size_t k, bool, bool) -> const Tensor<T>& {
    return proj[eta[k]];
  });
}

std::vector<EdgeColouring> expand_colourings(const Diagram& d, int dim) {
  const std::size_t edges = d.edges().size();
  if (static_cast<double>(edges) * std::log(static_cast<double>(dim)) > std::log(1e7))
    fail(ErrorCode::limit, "too many edge colourings");
  std::vector<EdgeColouring> out;
  std::vector<int> eta(edges, 0);
  do {
    out.push_back(eta);
  } while (next_index(eta, dim));
  return out;
}

Diagram tag_colouring(const Diagram& d, const EdgeColouring& eta) {
  const auto edges = d.edges();
  if (eta.size() != edges.size()) fail(ErrorCode::invalid_argument, "colouring has the wrong length");
  std::vector<int> tags = d.tags();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const int t = tags[edges[k].first] + ((1 + eta[k]) << 22);
    tags[edges[k].first] = tags[edges[k].second] = t;
  }
  return Diagram(d.vertices(), d.endpoints(), d.mates(), std::move(tags));
}

#define FEYN_INSTANTIATE(T)                                                                      \
  template Tensor<T> amplitude<T>(const TypedDiagram&, const AlgebraSpec&, const ColourTable*); \
  template T closed_amplitude<T>(const Diagram&, const AlgebraSpec&, const ColourTable*);       \
  template Polynomial<T> polynomial_P<T>(const Diagram&, const AlgebraSpec&, const ColourTable*); \
  template std::vector<PotentialTerm<T>> potential_S<T>(const AlgebraSpec&, const ColourTable&); \
  template Series<T> integrate_amplitudes<T>(const Enumeration&, const AlgebraSpec&,            \
                                             const ColourTable*);                              \
  template Series<T> expectation_value<T>(const Diagram&, const AlgebraSpec&, const ColourTable&, \
                                          bool, int);                                          \
  template Series<T> partition_function<T>(const AlgebraSpec&, const ColourTable&, int);        \
  template Series<T> free_energy<T>(const AlgebraSpec&, const ColourTable&, int);               \
  template Tensor<T> amplitude_coloured<T>(const TypedDiagram&, const EdgeColouring&,           \
                                           const AlgebraSpec&, const ColourTable*);

FEYN_INSTANTIATE(double)
FEYN_INSTANTIATE(Rational)

#undef FEYN_INSTANTIATE

}  // namespace feyn
