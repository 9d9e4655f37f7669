#include <doctest.h>

#include <cmath>
#include <random>

#include "feyn/dsl.hpp"
#include "feyn/error.hpp"
#include "feyn/gaussian.hpp"
#include "feyn/verify.hpp"

using namespace feyn;

namespace {

Polynomial<double> random_polynomial(std::mt19937& rng, int n, int deg) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> pick(0, deg);
  Polynomial<double> p(n);
  for (int k = 0; k < 6; ++k) {
    std::vector<int> e(n, 0);
    int left = pick(rng);
    for (int i = 0; i < n && left > 0; ++i) {
      const int take = i + 1 == n ? left : std::uniform_int_distribution<int>(0, left)(rng);
      e[i] = take;
      left -= take;
    }
    p.add(e, u(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("one-dimensional moments") {
  const GaussianSpec g(1, {2.0}, std::vector<Rational>{Rational(2)});
  MomentTable<Rational> m(g);
  CHECK(m.moment({0}) == 1);
  CHECK(m.moment({1}) == 0);
  CHECK(m.moment({2}) == Rational(1, 2));
  CHECK(m.moment({4}) == Rational(3, 4));
  CHECK(m.moment({6}) == Rational(15, 8));
  CHECK(monomial_moment_pairings<Rational>({6}, g) == Rational(15, 8));
}

TEST_CASE("moment recursion, pairing sum and quadrature agree") {
  std::mt19937 rng(21);
  const GaussianSpec g(2, {2.0, 0.5, 0.5, 1.0});
  MomentTable<double> table(g);
  for (int it = 0; it < 20; ++it) {
    const Polynomial<double> p = random_polynomial(rng, 2, 8);
    double pairs = 0;
    for (const auto& [e, c] : p.terms()) pairs += c * monomial_moment_pairings<double>(e, g);
    const double q = quadrature_average(p, g);
    CHECK(table.average(p) == doctest::Approx(q).epsilon(1e-9));
    CHECK(pairs == doctest::Approx(q).epsilon(1e-9));
  }
}

TEST_CASE("Wick tensor is symmetric and matches moments") {
  const GaussianSpec g(3, {2, 0.3, 0, 0.3, 1, -0.2, 0, -0.2, 1.5});
  const Tensor<double> w = wick_moment<double>(4, g);
  MomentTable<double> m(g);
  std::vector<int> idx(4, 0);
  do {
    std::vector<int> e(3, 0);
    for (int i : idx) ++e[i];
    CHECK(w(idx) == doctest::Approx(m.moment(e)));
  } while (next_index(idx, 3));
}

TEST_CASE("quadrature against the standard normal integrates low degrees exactly") {
  std::vector<double> nodes, weights;
  gauss_hermite(5, nodes, weights);
  double total = 0, second = 0, eighth = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total += weights[i];
    second += weights[i] * nodes[i] * nodes[i];
    eighth += weights[i] * std::pow(nodes[i], 8);
  }
  CHECK(total == doctest::Approx(1.0));
  CHECK(second == doctest::Approx(1.0));
  CHECK(eighth == doctest::Approx(105.0));
}

TEST_CASE("pairings that are not positive definite are rejected") {
  CHECK_THROWS_AS(GaussianSpec(2, {1, 2, 2, 1}), Error);
  CHECK_THROWS_AS(GaussianSpec(1, {-1}), Error);
}

TEST_CASE("the special 4-star at N=1") {
  ColourTable t;
  t.add("g4", {VertexKind::symmetric, 0, 4}, false);
  t.add("g4*", {VertexKind::symmetric, 0, 4}, true);
  t.set_bold("g4", "g4*");
  AlgebraSpec a = AlgebraSpec::exact_spec(1, {Rational(1)});
  a.add_tensor_exact("g4", {VertexKind::symmetric, 0, 4}, {Rational(1)});
  const Diagram s = star(VertexKind::symmetric, "g4*", 4, true);
  const auto plain = frt_check<Rational>(s, a, t, false, 0);
  CHECK(plain.match);
  CHECK(plain.lhs.constant_term() == Rational(1, 8));
  CHECK(plain.rhs.constant_term() == Rational(1, 8));
  const auto pot = frt_check<Rational>(s, a, t, true, 8);
  CHECK(pot.match);
  CHECK(pot.lhs == pot.rhs);
}

TEST_CASE("FRT on the plane algebra") {
  const ColourTable t = parse_table(read_file(FEYN_DATA_DIR "/plane.tbl"));
  const AlgebraSpec a = parse_algebra(read_file(FEYN_DATA_DIR "/plane.alg"));
  for (const char* f : {"star4.fd", "cyc3.fd", "coupon22.fd"}) {
    const Diagram g = parse_diagram(read_file(std::string(FEYN_DATA_DIR "/") + f), t).diagram;
    for (bool pot : {false, true}) {
      CAPTURE(f);
      CAPTURE(pot);
      CHECK(frt_check<Rational>(g, a, t, pot, 8).match);
      const auto r = frt_check<double>(g, a, t, pot, 8);
      CHECK(r.match);
      CHECK(r.max_diff < 1e-9);
    }
  }
  const auto empty = frt_check<Rational>(Diagram(), a, t, true, 8);
  CHECK(empty.match);
  CHECK(empty.lhs.constant_term() == 1);
}

TEST_CASE("average with potential reduces to the plain average at truncation 0") {
  const AlgebraSpec a = parse_algebra(read_file(FEYN_DATA_DIR "/plane.alg"));
  const ColourTable t = parse_table(read_file(FEYN_DATA_DIR "/plane.tbl"));
  Polynomial<Rational> f(2);
  f.add({2, 2}, Rational(1, 3));
  f.add({1, 1}, Rational(-2));
  const auto s = average_with_potential<Rational>(f, a, t, 0);
  MomentTable<Rational> m(GaussianSpec::from_algebra(a));
  CHECK(s.constant_term() == m.average(f));
}

TEST_CASE("Taylor stars") {
  Polynomial<Rational> phi(2);
  phi.add({0, 0}, Rational(3));
  phi.add({1, 0}, Rational(1, 2));
  phi.add({2, 1}, Rational(-2));
  phi.add({0, 3}, Rational(5, 7));
  phi.add({2, 2}, Rational(1, 3));
  const auto r = taylor_stars<Rational>(phi, {Rational(2), Rational(-1, 3)});
  CHECK(r.direct == phi({Rational(2), Rational(-1, 3)}));
  CHECK(r.groupoid_sum == r.direct);
  CHECK(r.coloured_sum == r.direct);
  CHECK(verify_taylor(10, 3, 6, 4).pass);
}

TEST_CASE("limits") {
  const GaussianSpec g(1, {1.0});
  CHECK_THROWS_AS(wick_moment<double>(kMaxWickOrder + 2, g), Error);
  CHECK_THROWS_AS(monomial_moment_pairings<double>({18}, g), Error);
  const GaussianSpec big(5, {1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1});
  CHECK_THROWS_AS(quadrature_average(Polynomial<double>::constant(5, 1.0), big), Error);
}
