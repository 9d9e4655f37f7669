#include <doctest.h>

#include "feyn/algebra.hpp"
#include "feyn/dsl.hpp"
#include "feyn/enumerate.hpp"
#include "feyn/error.hpp"
#include "feyn/iso.hpp"
#include "feyn/prop.hpp"
#include "feyn/verify.hpp"
#include "support.hpp"

using namespace feyn;

namespace {

ColourTable quartic() {
  ColourTable t;
  t.add("g4", {VertexKind::symmetric, 0, 4}, false);
  t.add("g4*", {VertexKind::symmetric, 0, 4}, true);
  t.set_bold("g4", "g4*");
  return t;
}

Diagram figure_eight(const std::string& colour) {
  RawDiagram r;
  r.vertices.push_back({VertexKind::symmetric, colour, 0, {0, 1, 2, 3}});
  r.matching = {{0, 1}, {1, 0}, {2, 3}, {3, 2}};
  return build_diagram(r, ColourTable::open());
}

ColourTable plane() { return parse_table(read_file(FEYN_DATA_DIR "/plane.tbl")); }
AlgebraSpec plane_algebra() { return parse_algebra(read_file(FEYN_DATA_DIR "/plane.alg")); }

}  // namespace

TEST_CASE("edges carry the copairing") {
  AlgebraSpec a = AlgebraSpec::exact_spec(1, {Rational(2)});
  a.add_tensor_exact("g4", {VertexKind::symmetric, 0, 4}, {Rational(1)});
  CHECK(closed_amplitude<Rational>(figure_eight("g4"), a) == Rational(1, 4));
  CHECK(closed_amplitude<double>(figure_eight("g4"), a) == doctest::Approx(0.25));
}

TEST_CASE("figure eight in two dimensions") {
  AlgebraSpec a = AlgebraSpec::exact_spec(2, {Rational(1), Rational(0), Rational(0), Rational(1)});
  a.add_tensor_exact("g4", {VertexKind::symmetric, 0, 4}, std::vector<Rational>(16, Rational(1)));
  CHECK(closed_amplitude<Rational>(figure_eight("g4"), a) == 4);
}

TEST_CASE("special vertices use the partner's tensor") {
  const ColourTable t = quartic();
  AlgebraSpec a = AlgebraSpec::exact_spec(1, {Rational(1)});
  a.add_tensor_exact("g4", {VertexKind::symmetric, 0, 4}, {Rational(3)});
  CHECK(closed_amplitude<Rational>(figure_eight("g4*"), a, &t) == 3);
}

TEST_CASE("symmetry of tensors is validated") {
  AlgebraSpec a(2, {1, 0, 0, 1});
  std::vector<double> t(8, 0.0);
  t[1] = 1.0;  // (0,0,1) without its permutations
  a.add_tensor("c", {VertexKind::cyclic, 0, 3}, t);
  CHECK_THROWS_AS(a.validate(), Error);
  CHECK_THROWS_AS(AlgebraSpec(2, {1, 2, 0, 1}), Error);
  CHECK_THROWS_AS(AlgebraSpec(2, {1, 1, 1, 1}), Error);
}

TEST_CASE("amplitudes are invariant under relabelling and multiplicative") {
  const ColourTable t = plane();
  const AlgebraSpec a = plane_algebra();
  const auto e = enumerate_closed(t, std::nullopt, 8, {false, false, 3});
  std::mt19937 rng(4);
  for (const auto& x : e.entries) {
    const Rational amp = closed_amplitude<Rational>(x.representative, a, &t);
    CHECK(closed_amplitude<Rational>(testing::shuffle_labels(x.representative, rng), a, &t) == amp);
    Rational prod = 1;
    for (const Diagram& c : connected_components(x.representative))
      prod *= closed_amplitude<Rational>(c, a, &t);
    CHECK(prod == amp);
    CHECK(closed_amplitude<double>(x.representative, a, &t) == doctest::Approx(amp.get_d()));
  }
}

TEST_CASE("orthonormal change of basis keeps amplitudes") {
  const ColourTable t = plane();
  const AlgebraSpec a = plane_algebra();
  const AlgebraSpec o = a.orthonormalized();
  CHECK(o.orthonormal());
  for (const auto& x : enumerate_closed(t, std::nullopt, 6).entries)
    CHECK(closed_amplitude<double>(x.representative, o, &t) ==
          doctest::Approx(closed_amplitude<double>(x.representative, a, &t)).epsilon(1e-10));
}

TEST_CASE("sum over edge colourings is the amplitude") {
  const ColourTable t = quartic();
  const AlgebraSpec a = sample_algebra(t, 2, 5);
  for (const auto& x : enumerate_closed(t, std::nullopt, 8).entries) {
    Rational total = 0;
    const TypedDiagram typed = make_typed(x.representative, 0);
    for (const auto& eta : expand_colourings(x.representative, 2))
      total += amplitude_coloured<Rational>(typed, eta, a, &t).data[0];
    CHECK(total == closed_amplitude<Rational>(x.representative, a, &t));
  }
}

TEST_CASE("amplitude of a composition is the matrix product") {
  // amplitudes list outputs before inputs; an output joined to an input needs no pairing
  AlgebraSpec a = AlgebraSpec::exact_spec(2, {Rational(2), Rational(1), Rational(1), Rational(1)});
  a.add_tensor_exact("m", {VertexKind::coupon, 1, 1}, {Rational(1), Rational(2), Rational(3), Rational(4)});
  a.add_tensor_exact("n", {VertexKind::coupon, 1, 1}, {Rational(0), Rational(-1), Rational(5), Rational(1, 2)});
  const TypedDiagram m = make_typed(star(VertexKind::coupon, "m", 2, false, 1), 1);
  const TypedDiagram n = make_typed(star(VertexKind::coupon, "n", 2, false, 1), 1);
  const Tensor<Rational> nm = amplitude<Rational>(compose(n, m), a);
  const Tensor<Rational> tm = amplitude<Rational>(m, a), tn = amplitude<Rational>(n, a);
  for (int o = 0; o < 2; ++o)
    for (int i = 0; i < 2; ++i) {
      Rational s = 0;
      for (int k = 0; k < 2; ++k) s += tn({o, k}) * tm({k, i});
      CHECK(nm({o, i}) == s);
    }
}

TEST_CASE("partition function with unit weights is the counting series") {
  const ColourTable t = quartic();
  AlgebraSpec a = AlgebraSpec::exact_spec(1, {Rational(1)});
  a.add_tensor_exact("g4", {VertexKind::symmetric, 0, 4}, {Rational(1)});
  CHECK(partition_function<Rational>(a, t, 12) ==
        groupoid_integral(enumerate_closed(t, std::nullopt, 12)));
  CHECK(exp(free_energy<Rational>(a, t, 12)) == partition_function<Rational>(a, t, 12));
}

TEST_CASE("expectation of the special 4-star") {
  const ColourTable t = quartic();
  AlgebraSpec a = AlgebraSpec::exact_spec(1, {Rational(1)});
  a.add_tensor_exact("g4", {VertexKind::symmetric, 0, 4}, {Rational(1)});
  const Diagram s = star(VertexKind::symmetric, "g4*", 4, true);
  CHECK(expectation_value<Rational>(s, a, t, false, 0).constant_term() == Rational(1, 8));
  const auto withx = expectation_value<Rational>(s, a, t, true, 8);
  const VariableKey x{VertexKind::symmetric, 0, 4, "g4"};
  CHECK(withx.constant_term() == Rational(1, 8));
  CHECK(withx.coefficient({{x, 1}}) == Rational(35, 192));
  CHECK(withx.coefficient({{x, 2}}) == Rational(385, 1024));
}

TEST_CASE("missing tensors are reported") {
  AlgebraSpec a = AlgebraSpec::exact_spec(1, {Rational(1)});
  try {
    closed_amplitude<Rational>(figure_eight("h"), a);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unknown_colour);
  }
}
