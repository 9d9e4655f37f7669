#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "feyn/feyn.h"

namespace {

struct Failure {
  feyn_status status;
};

void check(feyn_status s) {
  if (s != FEYN_OK) throw Failure{s};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  feyn_string_free(s);
  return out;
}

// Owning wrappers so that early exits release handles.
struct Table {
  feyn_table* p = nullptr;
  ~Table() { feyn_table_free(p); }
};
struct Diag {
  feyn_diagram* p = nullptr;
  ~Diag() { feyn_diagram_free(p); }
};
struct Alg {
  feyn_algebra* p = nullptr;
  ~Alg() { feyn_algebra_free(p); }
};

void load_table(Table& t, const std::string& path) {
  if (!path.empty()) check(feyn_table_load(path.c_str(), &t.p));
}
void load_diagram(Diag& d, const std::string& path, const Table& t) {
  check(feyn_diagram_load(path.c_str(), t.p, &d.p));
}
void load_algebra(Alg& a, const std::string& path) {
  if (!path.empty()) check(feyn_algebra_load(path.c_str(), &a.p));
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feynman diagrams, groupoid integrals and Gaussian checks"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "text, tsv or json")
      ->check(CLI::IsMember({"text", "tsv", "json"}))
      ->capture_default_str();

  std::string table_path, algebra_path, root_path, file_a, file_b, check_name;
  int max_degree = -1, m = 0, n = 0, dim = 0, count = 0, max_vertices = 0;
  unsigned long long seed = 1;
  bool connected = false, reduced = false, potential = false, bruteforce = false, exact = false,
       real = false;

  auto table_opt = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--table", table_path, "colour table (.tbl)");
    if (required) o->required();
  };
  auto numeric_opts = [&](CLI::App* c) {
    c->add_flag("--exact", exact, "exact rational arithmetic");
    c->add_flag("--real", real, "floating point arithmetic");
  };

  auto* aut = app.add_subcommand("aut", "automorphism group order and canonical code");
  aut->add_option("file", file_a, "diagram (.fd)")->required();
  table_opt(aut, false);
  aut->add_flag("--bruteforce", bruteforce, "also count automorphisms by brute force");

  auto* compose = app.add_subcommand("compose", "composition A o B");
  compose->add_option("a", file_a)->required();
  compose->add_option("b", file_b)->required();
  table_opt(compose, false);

  auto* tensor = app.add_subcommand("tensor", "tensor product A (x) B");
  tensor->add_option("a", file_a)->required();
  tensor->add_option("b", file_b)->required();
  table_opt(tensor, false);

  auto* braid = app.add_subcommand("braiding", "the braiding of type (m+n, n+m)");
  braid->add_option("m", m)->required()->check(CLI::NonNegativeNumber);
  braid->add_option("n", n)->required()->check(CLI::NonNegativeNumber);

  auto* pairings = app.add_subcommand("pairings", "number of perfect pairings of k legs");
  pairings->add_option("k", m)->required()->check(CLI::NonNegativeNumber);

  auto* clos = app.add_subcommand("closures", "closure classes of a diagram with multiplicities");
  clos->add_option("file", file_a)->required();
  table_opt(clos, false);

  auto* enumerate = app.add_subcommand("enumerate", "iso-classes of closed diagrams");
  table_opt(enumerate, true);
  enumerate->add_option("--max-degree", max_degree)->required();
  enumerate->add_flag("--connected", connected);
  enumerate->add_flag("--reduced", reduced);
  enumerate->add_option("--root", root_path, "root diagram (.fd)");

  auto* partition = app.add_subcommand("partition", "partition function");
  auto* free_energy = app.add_subcommand("free-energy", "free energy");
  for (auto* c : {partition, free_energy}) {
    table_opt(c, true);
    c->add_option("--algebra", algebra_path, "algebra (.alg); weights 1 without");
    c->add_option("--max-degree", max_degree)->required();
    numeric_opts(c);
  }

  auto* expect = app.add_subcommand("expect", "expectation value of a diagram");
  expect->add_option("file", file_a)->required();
  table_opt(expect, false);
  expect->add_option("--algebra", algebra_path);
  expect->add_flag("--potential", potential);
  expect->add_option("--max-degree", max_degree);
  numeric_opts(expect);

  auto* verify = app.add_subcommand("verify", "run a check: wick, frt, expfz, fubini, taylor, derivative, reduced");
  verify->add_option("check", check_name)
      ->required()
      ->check(CLI::IsMember({"wick", "frt", "expfz", "fubini", "taylor", "derivative", "reduced"}));
  verify->add_option("file", file_a, "diagram for frt, root for reduced");
  table_opt(verify, false);
  verify->add_option("--algebra", algebra_path);
  verify->add_option("--root", root_path);
  verify->add_option("--max-degree", max_degree);
  verify->add_flag("--potential", potential);
  verify->add_option("--dim", dim);
  verify->add_option("--count", count);
  verify->add_option("--seed", seed);
  verify->add_option("--max-vertices", max_vertices);
  numeric_opts(verify);

  CLI11_PARSE(app, argc, argv);

  const feyn_format fmt = format == "json" ? FEYN_FORMAT_JSON : format == "tsv" ? FEYN_FORMAT_TSV : FEYN_FORMAT_TEXT;
  const feyn_numeric numeric = exact ? FEYN_NUMERIC_EXACT : real ? FEYN_NUMERIC_REAL : FEYN_NUMERIC_AUTO;

  try {
    if (exact && real) {
      std::cerr << "error: --exact and --real exclude each other\n";
      return 2;
    }
    Table table;
    load_table(table, table_path);
    std::string out;

    if (*aut) {
      Diag d;
      load_diagram(d, file_a, table);
      uint64_t order = 0, brute = 0;
      char* code = nullptr;
      check(feyn_aut(d.p, &order, &code));
      const std::string hex = take(code);
      if (bruteforce) check(feyn_aut_bruteforce(d.p, &brute));
      if (fmt == FEYN_FORMAT_JSON) {
        out = "{\"aut\": " + std::to_string(order) + ", \"code\": " + json_string(hex);
        if (bruteforce) out += ", \"bruteforce\": " + std::to_string(brute);
        out += "}\n";
      } else {
        out = std::to_string(order) + "\n" + hex + "\n";
        if (bruteforce) out += std::to_string(brute) + "\n";
      }
    } else if (*compose || *tensor) {
      Diag a, b, r;
      load_diagram(a, file_a, table);
      load_diagram(b, file_b, table);
      check(*compose ? feyn_compose(a.p, b.p, &r.p) : feyn_tensor(a.p, b.p, &r.p));
      char* s = nullptr;
      check(feyn_diagram_serialize(r.p, &s));
      out = fmt == FEYN_FORMAT_JSON ? "{\"diagram\": " + json_string(take(s)) + "}\n" : take(s);
    } else if (*braid) {
      Diag r;
      check(feyn_braiding(m, n, &r.p));
      char* s = nullptr;
      check(feyn_diagram_serialize(r.p, &s));
      out = fmt == FEYN_FORMAT_JSON ? "{\"diagram\": " + json_string(take(s)) + "}\n" : take(s);
    } else if (*pairings) {
      uint64_t c = 0;
      check(feyn_pairing_count(m, &c));
      out = fmt == FEYN_FORMAT_JSON ? "{\"pairings\": " + std::to_string(c) + "}\n" : std::to_string(c) + "\n";
    } else if (*clos) {
      Diag d;
      load_diagram(d, file_a, table);
      char* s = nullptr;
      check(feyn_closures(d.p, fmt, &s));
      out = take(s);
    } else if (*enumerate) {
      Diag root;
      if (!root_path.empty()) load_diagram(root, root_path, table);
      char* s = nullptr;
      check(feyn_enumerate(table.p, root.p, max_degree, connected, reduced, fmt, &s));
      out = take(s);
    } else if (*partition || *free_energy) {
      Alg alg;
      load_algebra(alg, algebra_path);
      char* s = nullptr;
      check(*partition ? feyn_partition(alg.p, table.p, max_degree, numeric, fmt, &s)
                       : feyn_free_energy(alg.p, table.p, max_degree, numeric, fmt, &s));
      out = take(s);
    } else if (*expect) {
      if (potential && max_degree < 0) {
        std::cerr << "error: --potential needs --max-degree\n";
        return 2;
      }
      Diag d;
      load_diagram(d, file_a, table);
      Alg alg;
      load_algebra(alg, algebra_path);
      char* s = nullptr;
      check(feyn_expect(d.p, alg.p, table.p, potential, max_degree, numeric, fmt, &s));
      out = take(s);
    } else if (*verify) {
      Diag d;
      const std::string& subject = !file_a.empty() ? file_a : root_path;
      if (!subject.empty()) load_diagram(d, subject, table);
      Alg alg;
      load_algebra(alg, algebra_path);
      feyn_verify_args args;
      feyn_verify_args_init(&args);
      args.table = table.p;
      args.algebra = alg.p;
      args.diagram = d.p;
      args.max_degree = max_degree;
      args.with_potential = potential;
      args.numeric = numeric;
      args.dim = dim;
      args.count = count;
      args.max_vertices = max_vertices;
      args.seed = seed;
      int passed = 0;
      char* report = nullptr;
      check(feyn_verify(check_name.c_str(), &args, &passed, &report));
      const std::string text = take(report);
      if (fmt == FEYN_FORMAT_JSON) {
        out = "{\"check\": " + json_string(check_name) + ", \"pass\": " + (passed ? "true" : "false") +
              ", \"report\": " + json_string(text) + "}\n";
      } else {
        out = text + (passed ? "PASS\n" : "FAIL\n");
      }
      std::fwrite(out.data(), 1, out.size(), stdout);
      return passed ? 0 : 1;
    }
    std::fwrite(out.data(), 1, out.size(), stdout);
    return 0;
  } catch (const Failure& f) {
    std::cerr << "error: " << feyn_last_error() << "\n";
    return 2;
  }
}
