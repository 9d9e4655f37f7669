#include "feyn/series.hpp"

#include <map>

namespace feyn {

VariableKey variable_of(const Vertex& v) {
  const ColourShape s = v.shape();
  return {s.kind, s.inputs, s.outputs, v.colour};
}

int weighted_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [x, e] : m) d += x.grade() * e;
  return d;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial monomial_of(const Diagram& d) {
  std::map<VariableKey, int> count;
  for (const Vertex& v : d.vertices())
    if (!v.special) ++count[variable_of(v)];
  return Monomial(count.begin(), count.end());
}

std::string monomial_to_string(const Monomial& m) {
  std::string out;
  for (const auto& [x, e] : m) {
    if (!out.empty()) out += " ";
    out += x.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

RealSeries to_real(const RationalSeries& s) {
  RealSeries out(s.truncation());
  for (const auto& [m, c] : s.terms()) out.add_term(m, c.get_d());
  return out;
}

}  // namespace feyn
