#include "feyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "feyn/coverings.hpp"
#include "feyn/enumerate.hpp"
#include "feyn/error.hpp"
#include "feyn/gaussian.hpp"
#include "feyn/series.hpp"

namespace feyn {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdull;
}

std::uint64_t hash_string(const std::string& s, std::uint64_t h) {
  for (char c : s) h = mix(h, static_cast<unsigned char>(c));
  return h;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

void line(VerifyReport& r, bool ok, const std::string& text) {
  r.pass = r.pass && ok;
  r.text += (ok ? "pass  " : "FAIL  ") + text + "\n";
}

// Every exponent vector of total degree at most d in n variables.
void for_each_exponent(int n, int d, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> e(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      visit(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, d);
}

}  // namespace

AlgebraSpec sample_algebra(const ColourTable& table, int dim, std::uint64_t seed, bool orthonormal) {
  if (dim < 1 || dim > 4) fail(ErrorCode::invalid_argument, "sample algebra dimension must lie in 1..4");
  std::vector<Rational> g(dim * dim, Rational(0));
  if (orthonormal) {
    for (int i = 0; i < dim; ++i) g[i * dim + i] = 1;
  } else {
    // B^T B + I with small integer B.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(-1, 1);
    std::vector<int> b(dim * dim);
    for (int& x : b) x = pick(rng);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        int s = i == j ? 1 : 0;
        for (int k = 0; k < dim; ++k) s += b[k * dim + i] * b[k * dim + j];
        g[i * dim + j] = s;
      }
  }
  AlgebraSpec a = AlgebraSpec::exact_spec(dim, g);
  for (const ColourEntry& c : table.ordinary()) {
    const int n = c.shape.valence();
    if (n > 8) fail(ErrorCode::limit, "sample algebra limited to valence 8");
    std::vector<Rational> entries;
    std::vector<int> idx(n, 0);
    do {
      std::vector<int> key = idx;
      if (c.shape.kind == VertexKind::symmetric) {
        std::sort(key.begin(), key.end());
      } else if (c.shape.kind == VertexKind::cyclic && n > 0) {
        std::vector<int> rot = idx;
        for (int k = 1; k < n; ++k) {
          std::rotate(rot.begin(), rot.begin() + 1, rot.end());
          key = std::min(key, rot);
        }
      }
      std::uint64_t h = hash_string(c.name, seed);
      for (int x : key) h = mix(h, static_cast<std::uint64_t>(x));
      entries.push_back(ratio(static_cast<long>(h % 7) - 3, static_cast<long>(1 + (h >> 8) % 4)));
    } while (next_index(idx, dim));
    a.add_tensor_exact(c.name, c.shape, entries);
  }
  a.validate();
  return a;
}

VerifyReport verify_wick(int max_dim, int pairings, int max_degree, std::uint64_t seed, double tolerance) {
  if (max_dim < 1 || max_dim > 4) fail(ErrorCode::invalid_argument, "dimension must lie in 1..4");
  if (max_degree > kMaxWickOrder) fail(ErrorCode::limit, "moment degree above " + std::to_string(kMaxWickOrder));
  VerifyReport r;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int n = 1; n <= max_dim; ++n) {
    for (int p = 0; p < pairings; ++p) {
      std::vector<double> a(n * n), g(n * n);
      for (double& x : a) x = normal(rng);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = i == j ? 0.5 : 0.0;
          for (int k = 0; k < n; ++k) s += a[i * n + k] * a[j * n + k] / n;
          g[i * n + j] = s;
        }
      const GaussianSpec gs(n, g);
      const std::vector<double>& cov = gs.covariance<double>();
      MomentTable<double> table(gs);
      double worst = 0;
      int count = 0;
      for_each_exponent(n, max_degree, [&](const std::vector<int>& e) {
        Polynomial<double> mono(n);
        mono.add(e, 1.0);
        const double pair = monomial_moment_pairings<double>(e, gs);
        const double quad = quadrature_average(mono, gs);
        const double rec = table.moment(e);
        double scale = 1;
        for (int i = 0; i < n; ++i) scale *= std::pow(std::sqrt(cov[i * n + i]), e[i]);
        const double denom = std::max({std::abs(pair), std::abs(quad), scale});
        worst = std::max({worst, std::abs(pair - quad) / denom, std::abs(pair - rec) / denom});
        ++count;
      });
      // Tensor form against the monomial form.
      for (int k = 0; k <= std::min(max_degree, 6); ++k) {
        const Tensor<double> t = wick_moment<double>(k, gs);
        std::vector<int> idx(k, 0);
        do {
          std::vector<int> e(n, 0);
          for (int i : idx) ++e[i];
          const double m = table.moment(e);
          double scale = 1;
          for (int i = 0; i < n; ++i) scale *= std::pow(std::sqrt(cov[i * n + i]), e[i]);
          worst = std::max(worst, std::abs(t(idx) - m) / std::max({std::abs(m), scale}));
        } while (next_index(idx, n));
      }
      line(r, worst <= tolerance,
           "wick N=" + std::to_string(n) + " pairing " + std::to_string(p + 1) + ": " +
               std::to_string(count) + " monomials up to degree " + std::to_string(max_degree) +
               ", max relative difference " + fmt(worst));
    }
  }
  return r;
}

VerifyReport verify_frt(const Diagram& g, const AlgebraSpec& a, const ColourTable& table,
                        bool with_potential, int max_degree, bool exact, double tolerance) {
  VerifyReport r;
  const std::string what = std::string(with_potential ? "frt with potential" : "frt") + ", " +
                           std::to_string(g.vertices().size()) + " vertices";
  if (exact) {
    if (!a.exact()) fail(ErrorCode::incompatible, "exact mode needs an exact algebra");
    const FrtReport<Rational> f = frt_check<Rational>(g, a, table, with_potential, max_degree);
    line(r, f.match, what + " (exact)");
    r.text += "  diagrams: " + to_string(f.lhs) + "\n  gaussian: " + to_string(f.rhs) + "\n";
  } else {
    const FrtReport<double> f = frt_check<double>(g, a, table, with_potential, max_degree, tolerance);
    line(r, f.match, what + ", max difference " + fmt(f.max_diff));
    r.text += "  diagrams: " + to_string(f.lhs) + "\n  gaussian: " + to_string(f.rhs) + "\n";
  }
  return r;
}

VerifyReport verify_expfz(const ColourTable& table, int max_degree) {
  VerifyReport r;
  const Enumeration full = enumerate_closed(table, std::nullopt, max_degree);
  const Enumeration conn = enumerate_closed(table, std::nullopt, max_degree, {true, false});
  const RationalSeries z = groupoid_integral(full);
  const RationalSeries f = groupoid_integral(conn);
  const RationalSeries diff = exp(f) - z;
  r.text += "Z = " + to_string(z) + "\nF = " + to_string(f) + "\nexp(F) - Z = " + to_string(diff) + "\n";
  line(r, diff.is_zero(), "Z = exp(F) through degree " + std::to_string(max_degree));
  line(r, log(z) == f, "log(Z) = F");
  const PowerCheck pc = symmetric_power_check(full, conn);
  line(r, pc.ok, "closed classes factor into connected ones" + (pc.ok ? "" : ": " + pc.message));
  return r;
}

VerifyReport verify_derivative(const ColourTable& table, int max_degree, const AlgebraSpec* exact_algebra) {
  VerifyReport r;
  const std::vector<ColourEntry> ordinary = table.ordinary();
  const RationalSeries z = groupoid_integral(enumerate_closed(table, std::nullopt, max_degree));
  std::optional<RationalSeries> za;
  if (exact_algebra) {
    if (!exact_algebra->exact()) fail(ErrorCode::incompatible, "derivative check needs an exact algebra");
    za = partition_function<Rational>(*exact_algebra, table, max_degree);
  }
  auto special_star = [&](const ColourEntry& c) {
    const auto bold = table.bold_of(c.name);
    if (!bold) fail(ErrorCode::unknown_colour, "colour '" + c.name + "' has no special partner");
    return star(c.shape.kind, *bold, c.shape.valence(), true, c.shape.inputs);
  };

  auto check = [&](const std::vector<std::size_t>& which) {
    Diagram root;
    int grades = 0;
    std::map<std::size_t, int> e;
    for (std::size_t i : which) {
      root = disjoint_union(root, special_star(ordinary[i]));
      grades += variable_of(ordinary[i]).grade();
      ++e[i];
    }
    if (grades > max_degree) return;
    const int d = max_degree - grades;
    Rational fact(1);
    for (const auto& [i, k] : e) fact *= factorial(static_cast<unsigned>(k));
    RationalSeries lhs = z;
    for (std::size_t i : which) lhs = lhs.derivative(variable_of(ordinary[i]));
    const RationalSeries rhs = groupoid_integral(enumerate_closed(table, root, d)) * fact;
    std::string name;
    for (std::size_t i : which) name += (name.empty() ? "" : ",") + ordinary[i].name;
    line(r, lhs.truncated(d) == rhs, "d/dx[" + name + "] Z = " + to_string(fact) + " <<stars>>_x, degree " +
                                         std::to_string(d));
    if (za) {
      RationalSeries la = *za;
      for (std::size_t i : which) la = la.derivative(variable_of(ordinary[i]));
      const RationalSeries ra = expectation_value<Rational>(root, *exact_algebra, table, true, d) * fact;
      line(r, la.truncated(d) == ra, "  same with amplitudes");
    }
  };
  for (std::size_t i = 0; i < ordinary.size(); ++i) check({i});
  for (std::size_t i = 0; i < ordinary.size(); ++i)
    for (std::size_t j = i; j < ordinary.size(); ++j) check({i, j});
  return r;
}

VerifyReport verify_reduced(const ColourTable& table, const Diagram& root, int max_degree) {
  VerifyReport r;
  const RationalSeries full = groupoid_integral(enumerate_closed(table, root, max_degree));
  const RationalSeries reduced = groupoid_integral(enumerate_closed(table, root, max_degree, {false, true}));
  const RationalSeries z = groupoid_integral(enumerate_closed(table, std::nullopt, max_degree));
  r.text += "full    = " + to_string(full) + "\nreduced = " + to_string(reduced) + "\n";
  line(r, reduced * z == full, "reduced * Z = full through degree " + std::to_string(max_degree));
  line(r, full * reciprocal(z) == reduced, "full / Z = reduced");
  return r;
}

VerifyReport verify_fubini(const ColourTable& table, const AlgebraSpec* algebra, int max_degree,
                           int max_vertices) {
  VerifyReport r;
  auto report = [&](const CoveringReport& c) {
    std::string s = c.name + ": " + std::to_string(c.base_classes) + " base classes, " +
                    std::to_string(c.total_classes) + " total";
    if (c.degree) s += ", degree " + std::to_string(c.degree);
    s += std::string("; pull-back ") + (c.pullback_ok() ? "ok" : "differs") + ", Fubini " +
         (c.fubini_ok() ? "ok" : "differs") + ", push-pull " + (c.pushpull_ok() ? "ok" : "differs");
    if (!c.fibres_ok) s += ", wrong fibre size";
    if (!c.cardinality_ok) s += ", orbit sizes off";
    if (!c.classes_ok) s += ", classes disagree";
    if (!c.push_ok) s += ", push-forward off";
    if (!c.message.empty()) s += " (" + c.message + ")";
    line(r, c.ok(), s);
  };
  constexpr int kMaxHalfEdges = 14;
  for (int legs = 0; legs <= 4; ++legs)
    for (const CoveringReport& c : check_forget_numbering_splits(
             table, legs, std::min(max_degree, kMaxHalfEdges - legs), max_vertices))
      report(c);

  std::vector<Diagram> roots;
  const ColourEntry* smallest = nullptr;
  for (const ColourEntry& c : table.entries()) {
    if (!c.special || c.shape.valence() > 4) continue;
    roots.push_back(star(c.shape.kind, c.name, c.shape.valence(), true, c.shape.inputs));
    if (!smallest || c.shape.valence() < smallest->shape.valence()) smallest = &c;
  }
  if (smallest && 2 * smallest->shape.valence() <= 6) {
    const Diagram s = star(smallest->shape.kind, smallest->name, smallest->shape.valence(), true,
                           smallest->shape.inputs);
    roots.push_back(disjoint_union(s, s));
  }
  for (const Diagram& g : roots) {
    int legs = static_cast<int>(g.leg_count());
    report(check_composition(table, g, std::min(max_degree, kMaxHalfEdges - legs), max_vertices));
  }

  const AlgebraSpec a = algebra && algebra->exact() && algebra->orthonormal() ? *algebra
                                                                               : sample_algebra(table, 2, 7);
  report(check_edge_colouring(a, table, std::min(max_degree, kMaxHalfEdges), max_vertices));
  return r;
}

VerifyReport verify_taylor(int count, int max_dim, int max_degree, std::uint64_t seed, double tolerance) {
  if (max_dim < 1 || max_dim > 3) fail(ErrorCode::invalid_argument, "dimension must lie in 1..3");
  if (max_degree < 0 || max_degree > 8) fail(ErrorCode::invalid_argument, "degree must lie in 0..8");
  VerifyReport r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::bernoulli_distribution keep(0.6);
  double worst = 0;
  for (int t = 0; t < count; ++t) {
    const int n = 1 + static_cast<int>(rng() % max_dim);
    const int d = static_cast<int>(rng() % (max_degree + 1));
    Polynomial<double> phi(n);
    for_each_exponent(n, d, [&](const std::vector<int>& e) {
      if (keep(rng)) phi.add(e, coeff(rng));
    });
    std::vector<double> v(n);
    for (double& x : v) x = coeff(rng);
    const TaylorReport<double> tr = taylor_stars<double>(phi, v);
    const double scale = std::max(1.0, std::abs(tr.direct));
    const double diff = std::max(std::abs(tr.groupoid_sum - tr.direct), std::abs(tr.coloured_sum - tr.direct)) / scale;
    worst = std::max(worst, diff);
    line(r, diff <= tolerance,
         "taylor N=" + std::to_string(n) + " degree " + std::to_string(phi.degree()) + ": star sum " +
             fmt(tr.groupoid_sum) + ", coloured " + fmt(tr.coloured_sum) + ", phi(v) " + fmt(tr.direct));
  }
  r.text += "max relative difference " + fmt(worst) + "\n";
  return r;
}

}  // namespace feyn
