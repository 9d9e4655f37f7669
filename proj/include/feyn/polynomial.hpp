#pragma once

#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "feyn/error.hpp"
#include "feyn/rational.hpp"
#include "feyn/tensor.hpp"

namespace feyn {

// Polynomial in the coordinates v_0 .. v_{N-1}: exponent vector -> coefficient.
template <class T>
class Polynomial {
 public:
  using Exponent = std::vector<int>;

  explicit Polynomial(int vars = 1) : n_(vars) {}

  static Polynomial constant(int vars, const T& c) {
    Polynomial p(vars);
    p.add(Exponent(vars, 0), c);
    return p;
  }
  static Polynomial coordinate(int vars, int i) {
    Polynomial p(vars);
    Exponent e(vars, 0);
    e[i] = 1;
    p.add(e, T(1));
    return p;
  }

  int vars() const { return n_; }
  const std::map<Exponent, T>& terms() const { return terms_; }

  void add(const Exponent& e, const T& c) {
    if (static_cast<int>(e.size()) != n_) fail(ErrorCode::invalid_argument, "exponent length mismatch");
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
  }

  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
  }

  Polynomial operator+(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add(e, c);
    return out;
  }
  Polynomial operator*(const T& k) const {
    Polynomial out(n_);
    for (const auto& [e, c] : terms_) out.add(e, T(c * k));
    return out;
  }
  Polynomial operator*(const Polynomial& o) const {
    Polynomial out(n_);
    Exponent s(n_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        for (int i = 0; i < n_; ++i) s[i] = ea[i] + eb[i];
        out.add(s, T(ca * cb));
      }
    return out;
  }

  T operator()(const std::vector<T>& v) const {
    T total(0);
    for (const auto& [e, c] : terms_) {
      T term = c;
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= v[i];
      total += term;
    }
    return total;
  }

  // Homogeneous part of degree k as the symmetric tensor D^k p(0): its entry
  // at (i_1..i_k) is the mixed partial derivative, c_e * e_0! * ... * e_{N-1}!.
  Tensor<T> derivative_tensor(int k) const {
    Tensor<T> t(n_, k);
    std::vector<int> idx(k, 0);
    Exponent e(n_);
    do {
      std::fill(e.begin(), e.end(), 0);
      for (int i : idx) ++e[i];
      auto it = terms_.find(e);
      if (it == terms_.end()) continue;
      T c = it->second;
      for (int x : e) c *= from_rational<T>(factorial(x));
      t(idx) = c;
    } while (next_index(idx, n_));
    return t;
  }

  // Polynomial v -> t(v, ..., v) of a tensor of rank k.
  static Polynomial from_tensor(const Tensor<T>& t) {
    Polynomial p(t.dim);
    std::vector<int> idx(t.rank, 0);
    Exponent e(t.dim);
    do {
      const T& c = t(idx);
      if (is_zero(c)) continue;
      std::fill(e.begin(), e.end(), 0);
      for (int i : idx) ++e[i];
      p.add(e, c);
    } while (next_index(idx, t.dim));
    return p;
  }

 private:
  int n_;
  std::map<Exponent, T> terms_;
};

}  // namespace feyn
