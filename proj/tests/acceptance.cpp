#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "feyn/dsl.hpp"
#include "feyn/enumerate.hpp"
#include "feyn/feyn.h"
#include "feyn/gaussian.hpp"
#include "feyn/iso.hpp"
#include "feyn/prop.hpp"
#include "feyn/verify.hpp"
#include "support.hpp"

using namespace feyn;

namespace {

const std::string kData = FEYN_DATA_DIR;

ColourTable load_table(const std::string& name) { return parse_table(read_file(kData + "/" + name)); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!r.pass) ++failures;
  char time[32];
  std::snprintf(time, sizeof time, "%.1fs", secs);
  std::cout << (r.pass ? "PASS" : "FAIL") << "  " << number << ". " << title << " (" << time << ")";
  if (!r.detail.empty()) std::cout << ": " << r.detail;
  std::cout << std::endl;
}

// Appends a failed report's lines to detail.
void merge(Outcome& o, const VerifyReport& r, const std::string& label) {
  if (r.pass) return;
  o.pass = false;
  o.detail += label + " failed\n" + r.text;
}

std::string run(const std::string& command) {
  std::string out;
  FILE* p = popen(command.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  if (status != 0) out += "<exit " + std::to_string(status) + ">";
  return out;
}

std::size_t count_lines(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

std::string last_line(std::string text) {
  while (!text.empty() && text.back() == '\n') text.pop_back();
  return text.substr(text.rfind('\n') + 1);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  feyn_string_free(s);
  return out;
}

}  // namespace

int main() {
  const ColourTable quartic = load_table("quartic.tbl");
  const ColourTable cubic = load_table("cubic.tbl");
  const ColourTable mixed = load_table("mixed.tbl");
  const ColourTable plane = load_table("plane.tbl");

  criterion(1, "canonical aut order equals brute force on the corpus", [&] {
    std::vector<Diagram> corpus;
    std::mt19937 rng(2024);
    for (int i = 0; i < 2000; ++i) corpus.push_back(testing::random_diagram(rng));
    for (const ColourTable* t : {&quartic, &cubic, &mixed, &plane})
      for (auto& e : enumerate_closed(*t, std::nullopt, 8).entries) corpus.push_back(e.representative);
    for (auto& e : enumerate_open(mixed, 4, 8, false)) corpus.push_back(forget_numbering(e.representative));
    Outcome o;
    std::size_t checked = 0;
    for (const Diagram& d : corpus) {
      if (d.half_edge_count() > 16) continue;
      ++checked;
      const auto fast = canonical_code(d).aut_order, slow = aut_order_bruteforce(d);
      if (fast != slow) {
        o.pass = false;
        o.detail = "mismatch " + std::to_string(fast) + " vs " + std::to_string(slow) + " on " + serialize_line(d);
        return o;
      }
    }
    o.pass = checked >= 500;
    o.detail = std::to_string(checked) + " diagrams";
    return o;
  });

  criterion(2, "pairing counts are (2n-1)!! up to 14 points", [&] {
    const std::uint64_t expected[] = {1, 1, 3, 15, 105, 945, 10395, 135135};
    Outcome o;
    std::string seen;
    for (int n = 0; n <= 7; ++n) {
      std::uint64_t c = 0;
      std::set<std::vector<std::uint8_t>> codes;
      for_each_pairing(2 * n, [&](const TypedDiagram& t) {
        ++c;
        if (n <= 4) codes.insert(canonical_code(t).code);
      });
      std::uint64_t api = 0;
      feyn_pairing_count(2 * n, &api);
      if (c != expected[n] || api != expected[n] || (n <= 4 && codes.size() != c)) o.pass = false;
      seen += (n ? " " : "") + std::to_string(c);
    }
    o.detail = seen;
    return o;
  });

  criterion(3, "Z = exp(F) exactly through degree 12 (quartic, cubic, mixed)", [&] {
    Outcome o;
    for (auto [name, t] : {std::pair{"quartic", &quartic}, std::pair{"cubic", &cubic}, std::pair{"mixed", &mixed}}) {
      const auto full = enumerate_closed(*t, std::nullopt, 12);
      const auto conn = enumerate_closed(*t, std::nullopt, 12, {true, false});
      const RationalSeries Z = groupoid_integral(full), F = groupoid_integral(conn);
      if (!(exp(F) == Z) || !(log(Z) == F) || !symmetric_power_check(full, conn).ok) {
        o.pass = false;
        o.detail += std::string(name) + " fails; ";
      }
      if (t == &quartic) {
        const VariableKey x{VertexKind::symmetric, 0, 4, "g4"};
        // x^2 coefficient via Wick: E[v^8] / (2! 4!^2)
        MomentTable<Rational> m(GaussianSpec(1, {1.0}, std::vector<Rational>{Rational(1)}));
        const Rational wick = m.moment({8}) / Rational(2 * 24 * 24);
        const bool values = Z.coefficient({{x, 1}}) == Rational(1, 8) &&
                            Z.coefficient({{x, 2}}) == Rational(35, 384) && wick == ratio(105, 1152) &&
                            F.coefficient({{x, 1}}) == Rational(1, 8) && F.coefficient({{x, 2}}) == Rational(1, 12);
        if (!values) o.pass = false;
        o.detail += "quartic Z = " + to_string(Z.truncated(8)) + ", F = " + to_string(F.truncated(8)) + "; ";
      }
    }
    return o;
  });

  criterion(4, "Wick moments vs Gauss-Hermite quadrature, N <= 3, degree <= 8", [&] {
    Outcome o;
    const VerifyReport r = verify_wick(3, 5, 8, 1, 1e-9);
    merge(o, r, "wick");
    if (o.pass) o.detail = last_line(r.text);
    return o;
  });

  criterion(5, "diagram side equals Gaussian side for empty, 4-star, cyclic 3-star, (2,2)-coupon", [&] {
    Outcome o;
    {
      ColourTable t = quartic;
      AlgebraSpec a = parse_algebra(read_file(kData + "/quartic.alg"));
      const Diagram s = star(VertexKind::symmetric, "g4*", 4, true);
      const auto r = frt_check<Rational>(s, a, t, false, 0);
      if (!r.match || r.lhs.constant_term() != Rational(1, 8) || r.rhs.constant_term() != Rational(1, 8)) {
        o.pass = false;
        o.detail += "4-star at N=1 is not 1/8; ";
      }
    }
    const AlgebraSpec a = parse_algebra(read_file(kData + "/plane.alg"));
    std::vector<std::pair<std::string, Diagram>> subjects = {{"empty", Diagram()}};
    for (const char* f : {"star4.fd", "cyc3.fd", "coupon22.fd"})
      subjects.push_back({f, parse_diagram(read_file(kData + "/" + f), plane).diagram});
    double worst = 0;
    for (const auto& [name, g] : subjects)
      for (bool pot : {false, true}) {
        const auto exact = frt_check<Rational>(g, a, plane, pot, 8);
        const auto real = frt_check<double>(g, a, plane, pot, 8, 1e-9);
        worst = std::max(worst, real.max_diff);
        if (!exact.match || !real.match) {
          o.pass = false;
          o.detail += name + (pot ? " with potential" : "") + " differs; ";
        }
      }
    char diff[32];
    std::snprintf(diff, sizeof diff, "%.2e", worst);
    o.detail += std::string("exact match, max real difference ") + diff;
    return o;
  });

  criterion(6, "pull-back, Fubini and push-pull on the three coverings, <= 3 vertices", [&] {
    Outcome o;
    const AlgebraSpec a = sample_algebra(mixed, 2, 7);
    const VerifyReport m = verify_fubini(mixed, &a, 12, 3), p = verify_fubini(plane, nullptr, 10, 3);
    merge(o, m, "mixed");
    merge(o, p, "plane");
    if (o.pass) o.detail = std::to_string(count_lines(m.text) + count_lines(p.text)) + " coverings";
    return o;
  });

  criterion(7, "dZ/dx equals the special star expectation through degree 8, with e! factors", [&] {
    Outcome o;
    merge(o, verify_derivative(mixed, 8, nullptr), "counting");
    const AlgebraSpec a = sample_algebra(mixed, 2, 3, false);
    const VerifyReport r = verify_derivative(mixed, 8, &a);
    merge(o, r, "amplitudes");
    if (o.pass) o.detail = std::to_string(count_lines(r.text)) + " derivatives with amplitudes";
    return o;
  });

  criterion(8, "reduced series times Z equals the full series, root the special 4-star", [&] {
    Outcome o;
    const Diagram root = star(VertexKind::symmetric, "g4*", 4, true);
    merge(o, verify_reduced(quartic, root, 8), "quartic");
    merge(o, verify_reduced(mixed, root, 8), "mixed");
    return o;
  });

  criterion(9, "star sums equal direct evaluation for 20 random polynomials", [&] {
    Outcome o;
    const VerifyReport r = verify_taylor(20, 3, 6, 11, 1e-10);
    merge(o, r, "taylor");
    if (o.pass) o.detail = last_line(r.text);
    return o;
  });

  criterion(10, "serialize/parse round-trip on the enumerated corpus; repeated runs identical", [&] {
    Outcome o;
    std::size_t count = 0;
    // Library path over every enumerated class, closed and open.
    for (const ColourTable* t : {&quartic, &cubic, &mixed, &plane}) {
      for (const auto& e : enumerate_closed(*t, std::nullopt, 12).entries) {
        ++count;
        if (!(canonical_code(parse_diagram(serialize(e.representative), *t).diagram) == e.code)) o.pass = false;
      }
      for (int legs = 1; legs <= 3; ++legs)
        for (const auto& e : enumerate_open(*t, legs, 8, true)) {
          ++count;
          if (!(canonical_code(parse_diagram(serialize(e.representative), *t).as_typed()) == e.code))
            o.pass = false;
        }
    }
    // C interface: every row of the TSV enumeration parses back to its code.
    feyn_table* t = nullptr;
    if (feyn_table_load((kData + "/mixed.tbl").c_str(), &t) != FEYN_OK) return Outcome{false, feyn_last_error()};
    char* out = nullptr;
    feyn_enumerate(t, nullptr, 12, 0, 0, FEYN_FORMAT_TSV, &out);
    std::istringstream rows(take(out));
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
      const auto c1 = line.find('\t'), c2 = line.find('\t', c1 + 1), c3 = line.find('\t', c2 + 1);
      const std::string code = line.substr(c2 + 1, c3 - c2 - 1), text = line.substr(c3 + 1);
      feyn_diagram* d = nullptr;
      std::uint64_t order = 0;
      char* back = nullptr;
      if (feyn_diagram_parse(text.c_str(), t, &d) != FEYN_OK || feyn_aut(d, &order, &back) != FEYN_OK ||
          take(back) != code || std::to_string(order) != line.substr(c1 + 1, c2 - c1 - 1))
        o.pass = false;
      feyn_diagram_free(d);
      ++count;
    }
    feyn_table_free(t);

    // CLI: repeated runs are byte-identical, and a serialized diagram read back from disk keeps its code.
    const std::string cli = FEYN_CLI;
    const std::vector<std::string> commands = {
        cli + " enumerate --table " + kData + "/mixed.tbl --max-degree 10",
        cli + " --format json enumerate --table " + kData + "/plane.tbl --max-degree 8 --connected",
        cli + " partition --table " + kData + "/plane.tbl --algebra " + kData + "/plane.alg --max-degree 8",
        cli + " --format tsv free-energy --table " + kData + "/plane.tbl --algebra " + kData +
            "/plane.alg --max-degree 8 --real",
        cli + " closures " + kData + "/star4.fd",
    };
    for (const auto& c : commands) {
      const std::string first = run(c), second = run(c);
      if (first != second || first.empty() || first.find("<exit") != std::string::npos) {
        o.pass = false;
        o.detail += "not deterministic: " + c + "; ";
      }
    }
    const auto tmp = std::filesystem::temp_directory_path() / ("feyn_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(tmp);
    int files = 0;
    for (const auto& e : enumerate_closed(mixed, std::nullopt, 8).entries) {
      const auto path = tmp / ("d" + std::to_string(files++) + ".fd");
      std::ofstream(path) << serialize(e.representative);
      const std::string got = run(cli + " aut " + path.string() + " --table " + kData + "/mixed.tbl");
      if (got != std::to_string(e.code.aut_order) + "\n" + e.code.hex() + "\n") {
        o.pass = false;
        o.detail += "cli aut differs on " + path.string() + "; ";
      }
    }
    std::filesystem::remove_all(tmp);
    o.detail += std::to_string(count) + " classes round-tripped, " + std::to_string(files) + " through the CLI";
    return o;
  });

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
