#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "feyn/diagram.hpp"
#include "feyn/error.hpp"
#include "feyn/rational.hpp"

namespace feyn {

// A coupling variable x; its grade is the valence of the colour.
struct VariableKey {
  VertexKind kind = VertexKind::symmetric;
  int inputs = 0;
  int outputs = 0;
  std::string colour;

  int grade() const { return inputs + outputs; }
  auto operator<=>(const VariableKey&) const = default;
  std::string name() const {
    std::string arity = kind == VertexKind::coupon
                            ? std::to_string(inputs) + "," + std::to_string(outputs)
                            : std::to_string(outputs);
    return "x[" + colour + "," + arity + "]";
  }
};

VariableKey variable_of(const Vertex& v);
inline VariableKey variable_of(const ColourEntry& e) {
  return {e.shape.kind, e.shape.inputs, e.shape.outputs, e.name};
}

// Sorted (variable, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<VariableKey, int>>;

int weighted_degree(const Monomial& m);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
// Exponents of ordinary vertices of d, one variable per colour.
Monomial monomial_of(const Diagram& d);
std::string monomial_to_string(const Monomial& m);

inline std::string coeff_to_string(const Rational& q) { return to_string(q); }
inline std::string coeff_to_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Truncated multivariate power series: every stored monomial has weighted
// degree at most the truncation, zero coefficients are never stored.
template <class Coeff>
class Series {
 public:
  using Terms = std::map<Monomial, Coeff>;

  explicit Series(int truncation = 0) : trunc_(truncation) {
    if (truncation < 0) fail(ErrorCode::invalid_argument, "negative truncation");
  }

  static Series constant(const Coeff& c, int truncation) {
    Series s(truncation);
    s.add_term({}, c);
    return s;
  }
  static Series variable(const VariableKey& x, int truncation) {
    Series s(truncation);
    s.add_term({{x, 1}}, Coeff(1));
    return s;
  }

  int truncation() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }
  Coeff constant_term() const { return coefficient({}); }

  void add_term(const Monomial& m, const Coeff& c) {
    if (weighted_degree(m) > trunc_) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) it->second += c;
    if (feyn::is_zero(it->second)) terms_.erase(it);
  }

  Series truncated(int d) const {
    Series out(std::min(d, trunc_));
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
  }

  Series operator+(const Series& o) const {
    Series out(std::min(trunc_, o.trunc_));
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
  }
  Series operator-(const Series& o) const { return *this + o * Coeff(-1); }
  Series operator*(const Coeff& k) const {
    Series out(trunc_);
    if (feyn::is_zero(k)) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, Coeff(c * k));
    return out;
  }
  Series operator*(const Series& o) const {
    Series out(std::min(trunc_, o.trunc_));
    for (const auto& [ma, ca] : terms_) {
      const int da = weighted_degree(ma);
      if (da > out.trunc_) continue;
      for (const auto& [mb, cb] : o.terms_) {
        if (da + weighted_degree(mb) > out.trunc_) continue;
        out.add_term(monomial_mul(ma, mb), Coeff(ca * cb));
      }
    }
    return out;
  }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  // Terms of equal truncation compared exactly.
  bool operator==(const Series& o) const { return trunc_ == o.trunc_ && terms_ == o.terms_; }

  Series derivative(const VariableKey& x) const {
    // Differentiating lowers the degree, so the result is exact only up to
    // truncation - grade(x).
    Series out(std::max(0, trunc_ - x.grade()));
    for (const auto& [m, c] : terms_) {
      auto it = std::find_if(m.begin(), m.end(), [&](const auto& p) { return p.first == x; });
      if (it == m.end()) continue;
      Monomial lowered = m;
      auto& e = lowered[it - m.begin()].second;
      const int k = e;
      if (--e == 0) lowered.erase(lowered.begin() + (it - m.begin()));
      out.add_term(lowered, Coeff(c * Coeff(k)));
    }
    return out;
  }

  Series pow(int k) const {
    Series out = constant(Coeff(1), trunc_);
    for (int i = 0; i < k; ++i) out = out * *this;
    return out;
  }

 private:
  int trunc_;
  Terms terms_;
};

template <class Coeff>
Series<Coeff> exp(const Series<Coeff>& s) {
  if (!is_zero(s.constant_term())) fail(ErrorCode::invalid_argument, "exp needs a zero constant term");
  Series<Coeff> out = Series<Coeff>::constant(Coeff(1), s.truncation());
  Series<Coeff> power = out;
  for (int k = 1; k <= s.truncation(); ++k) {
    power = power * s * Coeff(Coeff(1) / Coeff(k));
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

template <class Coeff>
Series<Coeff> log(const Series<Coeff>& s) {
  if (s.constant_term() != Coeff(1)) fail(ErrorCode::invalid_argument, "log needs constant term 1");
  const Series<Coeff> u = s - Series<Coeff>::constant(Coeff(1), s.truncation());
  Series<Coeff> out(s.truncation());
  Series<Coeff> power = Series<Coeff>::constant(Coeff(1), s.truncation());
  for (int k = 1; k <= s.truncation(); ++k) {
    power = power * u;
    if (power.is_zero()) break;
    out += power * Coeff(Coeff(k % 2 == 1 ? 1 : -1) / Coeff(k));
  }
  return out;
}

// Newton iteration r <- r (2 - s r); each step doubles the exact degree.
template <class Coeff>
Series<Coeff> reciprocal(const Series<Coeff>& s) {
  const Coeff c0 = s.constant_term();
  if (is_zero(c0)) fail(ErrorCode::invalid_argument, "reciprocal needs a nonzero constant term");
  const int n = s.truncation();
  Series<Coeff> r = Series<Coeff>::constant(Coeff(Coeff(1) / c0), n);
  const Series<Coeff> two = Series<Coeff>::constant(Coeff(2), n);
  for (int exact = 0; exact < n; exact = 2 * exact + 1) r = r * (two - s * r);
  return r;
}

template <class Coeff>
std::vector<std::pair<Monomial, Coeff>> sorted_terms(const Series<Coeff>& s) {
  std::vector<std::pair<Monomial, Coeff>> out(s.terms().begin(), s.terms().end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const int da = weighted_degree(a.first), db = weighted_degree(b.first);
    if (da != db) return da < db;
    return a.first < b.first;
  });
  return out;
}

// "1 + 1/8 * x[g,4] + ..." in (degree, monomial) order; "0" when empty.
template <class Coeff>
std::string to_string(const Series<Coeff>& s) {
  std::string out;
  for (const auto& [m, c] : sorted_terms(s)) {
    if (!out.empty()) out += " + ";
    out += coeff_to_string(c);
    if (!m.empty()) out += " * " + monomial_to_string(m);
  }
  return out.empty() ? "0" : out;
}

// One "degree<TAB>coefficient<TAB>monomial" line per term.
template <class Coeff>
std::string to_tsv(const Series<Coeff>& s) {
  std::string out;
  for (const auto& [m, c] : sorted_terms(s))
    out += std::to_string(weighted_degree(m)) + "\t" + coeff_to_string(c) + "\t" +
           (m.empty() ? std::string("1") : monomial_to_string(m)) + "\n";
  return out;
}

using RationalSeries = Series<Rational>;
using RealSeries = Series<double>;

RealSeries to_real(const RationalSeries& s);

}  // namespace feyn
