#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace feyn {

using Rational = mpq_class;
using BigInt = mpz_class;

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);

// Accepts "p", "p/q", and plain decimals such as "-1.25" or "3e-2".
Rational parse_rational(std::string_view text);

Rational factorial(unsigned n);

// p/q reduced to lowest terms.
inline Rational ratio(const BigInt& p, const BigInt& q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Narrowing helpers used by the templated numeric code.
template <class T>
T from_rational(const Rational& q);

template <>
inline Rational from_rational<Rational>(const Rational& q) {
  return q;
}

template <>
inline double from_rational<double>(const Rational& q) {
  return q.get_d();
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

}  // namespace feyn
