#include "feyn/feyn.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "feyn/algebra.hpp"
#include "feyn/dsl.hpp"
#include "feyn/enumerate.hpp"
#include "feyn/error.hpp"
#include "feyn/iso.hpp"
#include "feyn/prop.hpp"
#include "feyn/verify.hpp"

struct feyn_table {
  feyn::ColourTable table;
};

struct feyn_diagram {
  feyn::Diagram diagram;
  bool typed = false;
  std::vector<int> inputs;
  std::vector<int> outputs;

  feyn::TypedDiagram as_typed() const {
    return typed ? feyn::TypedDiagram(diagram, inputs, outputs) : feyn::make_typed(diagram, 0);
  }
};

struct feyn_algebra {
  feyn::AlgebraSpec spec;
};

namespace {

using namespace feyn;

thread_local std::string last_error;

template <class F>
feyn_status guard(F&& f) {
  try {
    last_error.clear();
    f();
    return FEYN_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<feyn_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FEYN_ERR_LIMIT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FEYN_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const ColourTable& table_or_open(const feyn_table* t) {
  static const ColourTable open = ColourTable::open();
  return t ? t->table : open;
}

feyn_diagram* wrap(const TypedDiagram& t) {
  return new feyn_diagram{t.base(), true, t.inputs(), t.outputs()};
}

template <class Coeff>
std::string render_series(const Series<Coeff>& s, feyn_format format) {
  switch (format) {
    case FEYN_FORMAT_TSV: return "degree\tcoefficient\tmonomial\n" + to_tsv(s);
    case FEYN_FORMAT_JSON: {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [m, c] : sorted_terms(s)) {
        nlohmann::json coeff;
        if constexpr (std::is_same_v<Coeff, Rational>) coeff = to_string(c);
        else coeff = c;
        terms.push_back({{"degree", weighted_degree(m)},
                         {"coefficient", coeff},
                         {"monomial", m.empty() ? std::string("1") : monomial_to_string(m)}});
      }
      return nlohmann::json{{"truncation", s.truncation()}, {"terms", terms}}.dump(2) + "\n";
    }
    default: return to_string(s) + "\n";
  }
}

bool use_exact(const feyn_algebra* a, feyn_numeric numeric) {
  if (!a) return numeric != FEYN_NUMERIC_REAL;
  if (numeric == FEYN_NUMERIC_EXACT && !a->spec.exact())
    fail(ErrorCode::incompatible, "the algebra has inexact entries");
  return numeric == FEYN_NUMERIC_EXACT || (numeric == FEYN_NUMERIC_AUTO && a->spec.exact());
}

std::string counted(const RationalSeries& s, bool exact, feyn_format format) {
  return exact ? render_series(s, format) : render_series(to_real(s), format);
}

}  // namespace

extern "C" {

const char* feyn_last_error(void) { return last_error.c_str(); }
void feyn_string_free(char* s) { std::free(s); }
const char* feyn_version(void) { return "1.0.0"; }

feyn_status feyn_table_open(feyn_table** out) {
  return guard([&] {
    require(out, "out");
    *out = new feyn_table{ColourTable::open()};
  });
}

feyn_status feyn_table_parse(const char* text, feyn_table** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new feyn_table{parse_table(text)};
  });
}

feyn_status feyn_table_load(const char* path, feyn_table** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new feyn_table{parse_table(read_file(path))};
  });
}

void feyn_table_free(feyn_table* t) { delete t; }

feyn_status feyn_diagram_parse(const char* text, const feyn_table* table, feyn_diagram** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    ParsedDiagram p = parse_diagram(text, table_or_open(table));
    *out = new feyn_diagram{std::move(p.diagram), p.typed, std::move(p.inputs), std::move(p.outputs)};
  });
}

feyn_status feyn_diagram_load(const char* path, const feyn_table* table, feyn_diagram** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    ParsedDiagram p = parse_diagram(read_file(path), table_or_open(table));
    *out = new feyn_diagram{std::move(p.diagram), p.typed, std::move(p.inputs), std::move(p.outputs)};
  });
}

void feyn_diagram_free(feyn_diagram* d) { delete d; }

int feyn_diagram_is_typed(const feyn_diagram* d) { return d && d->typed ? 1 : 0; }

feyn_status feyn_diagram_serialize(const feyn_diagram* d, char** out) {
  return guard([&] {
    require(d, "diagram");
    require(out, "out");
    *out = copy_out(d->typed ? serialize(d->as_typed()) : serialize(d->diagram));
  });
}

feyn_status feyn_diagram_info(const feyn_diagram* d, int* vertices, int* legs, int* deg, int* components) {
  return guard([&] {
    require(d, "diagram");
    if (vertices) *vertices = static_cast<int>(d->diagram.vertices().size());
    if (legs) *legs = static_cast<int>(d->diagram.leg_count());
    if (deg) *deg = degree(d->diagram);
    if (components) *components = static_cast<int>(component_count(d->diagram));
  });
}

feyn_status feyn_aut(const feyn_diagram* d, uint64_t* order, char** code) {
  return guard([&] {
    require(d, "diagram");
    const CanonicalCode c = d->typed ? canonical_code(d->as_typed()) : canonical_code(d->diagram);
    if (order) *order = c.aut_order;
    if (code) *code = copy_out(c.hex());
  });
}

feyn_status feyn_aut_bruteforce(const feyn_diagram* d, uint64_t* order) {
  return guard([&] {
    require(d, "diagram");
    require(order, "order");
    *order = d->typed ? aut_order_bruteforce(d->as_typed()) : aut_order_bruteforce(d->diagram);
  });
}

feyn_status feyn_isomorphic(const feyn_diagram* a, const feyn_diagram* b, int* result) {
  return guard([&] {
    require(a, "first diagram");
    require(b, "second diagram");
    require(result, "result");
    if (a->typed != b->typed) {
      *result = 0;
      return;
    }
    *result = a->typed ? are_isomorphic(a->as_typed(), b->as_typed()) : are_isomorphic(a->diagram, b->diagram);
  });
}

feyn_status feyn_compose(const feyn_diagram* g, const feyn_diagram* f, feyn_diagram** out) {
  return guard([&] {
    require(g, "first diagram");
    require(f, "second diagram");
    require(out, "out");
    *out = wrap(compose(g->as_typed(), f->as_typed()));
  });
}

feyn_status feyn_tensor(const feyn_diagram* a, const feyn_diagram* b, feyn_diagram** out) {
  return guard([&] {
    require(a, "first diagram");
    require(b, "second diagram");
    require(out, "out");
    *out = wrap(tensor(a->as_typed(), b->as_typed()));
  });
}

feyn_status feyn_braiding(int m, int n, feyn_diagram** out) {
  return guard([&] {
    require(out, "out");
    *out = wrap(braiding(m, n));
  });
}

feyn_status feyn_pairing_count(int k, uint64_t* count) {
  return guard([&] {
    require(count, "count");
    std::uint64_t c = 0;
    for_each_pairing(k, [&](const TypedDiagram&) { ++c; });
    *count = c;
  });
}

feyn_status feyn_closures(const feyn_diagram* d, feyn_format format, char** out) {
  return guard([&] {
    require(d, "diagram");
    require(out, "out");
    const std::vector<ClassEntry> classes = closures(d->diagram);
    if (format == FEYN_FORMAT_JSON) {
      nlohmann::json rows = nlohmann::json::array();
      for (const ClassEntry& c : classes)
        rows.push_back({{"multiplicity", c.multiplicity},
                        {"aut", c.code.aut_order},
                        {"code", c.code.hex()},
                        {"diagram", serialize_line(c.representative)}});
      *out = copy_out(rows.dump(2) + "\n");
      return;
    }
    std::string s = "multiplicity\taut\tdiagram\n";
    for (const ClassEntry& c : classes)
      s += std::to_string(c.multiplicity) + "\t" + std::to_string(c.code.aut_order) + "\t" +
           serialize_line(c.representative) + "\n";
    *out = copy_out(s);
  });
}

feyn_status feyn_enumerate(const feyn_table* table, const feyn_diagram* root, int max_degree,
                           int connected, int reduced, feyn_format format, char** out) {
  return guard([&] {
    require(table, "table");
    require(out, "out");
    if (reduced && !root) fail(ErrorCode::invalid_argument, "reduced enumeration needs a root");
    std::optional<Diagram> r;
    if (root) r = root->diagram;
    const Enumeration e = enumerate_closed(table->table, r, max_degree, {connected != 0, reduced != 0});
    *out = copy_out(format == FEYN_FORMAT_JSON ? render_enumeration_json(e) : render_enumeration(e));
  });
}

feyn_status feyn_algebra_parse(const char* text, feyn_algebra** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new feyn_algebra{parse_algebra(text)};
  });
}

feyn_status feyn_algebra_load(const char* path, feyn_algebra** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new feyn_algebra{parse_algebra(read_file(path))};
  });
}

void feyn_algebra_free(feyn_algebra* a) { delete a; }

int feyn_algebra_is_exact(const feyn_algebra* a) { return a && a->spec.exact() ? 1 : 0; }

feyn_status feyn_partition(const feyn_algebra* algebra, const feyn_table* table, int max_degree,
                           feyn_numeric numeric, feyn_format format, char** out) {
  return guard([&] {
    require(table, "table");
    require(out, "out");
    const bool exact = use_exact(algebra, numeric);
    if (!algebra) {
      *out = copy_out(counted(groupoid_integral(enumerate_closed(table->table, std::nullopt, max_degree)),
                              exact, format));
    } else if (exact) {
      *out = copy_out(render_series(partition_function<Rational>(algebra->spec, table->table, max_degree), format));
    } else {
      *out = copy_out(render_series(partition_function<double>(algebra->spec, table->table, max_degree), format));
    }
  });
}

feyn_status feyn_free_energy(const feyn_algebra* algebra, const feyn_table* table, int max_degree,
                             feyn_numeric numeric, feyn_format format, char** out) {
  return guard([&] {
    require(table, "table");
    require(out, "out");
    const bool exact = use_exact(algebra, numeric);
    if (!algebra) {
      const Enumeration e = enumerate_closed(table->table, std::nullopt, max_degree, {true, false});
      *out = copy_out(counted(groupoid_integral(e), exact, format));
    } else if (exact) {
      *out = copy_out(render_series(free_energy<Rational>(algebra->spec, table->table, max_degree), format));
    } else {
      *out = copy_out(render_series(free_energy<double>(algebra->spec, table->table, max_degree), format));
    }
  });
}

feyn_status feyn_expect(const feyn_diagram* d, const feyn_algebra* algebra, const feyn_table* table,
                        int with_potential, int max_degree, feyn_numeric numeric, feyn_format format,
                        char** out) {
  return guard([&] {
    require(d, "diagram");
    require(out, "out");
    const ColourTable& t = table_or_open(table);
    const Diagram& g = d->diagram;
    const int trunc = with_potential ? max_degree : degree(g);
    const bool exact = use_exact(algebra, numeric);
    if (!algebra) {
      const ColourTable none;
      const Enumeration e = enumerate_closed(with_potential ? t : none, g, trunc);
      *out = copy_out(counted(groupoid_integral(e), exact, format));
    } else if (exact) {
      *out = copy_out(render_series(expectation_value<Rational>(g, algebra->spec, t, with_potential != 0, trunc), format));
    } else {
      *out = copy_out(render_series(expectation_value<double>(g, algebra->spec, t, with_potential != 0, trunc), format));
    }
  });
}

void feyn_verify_args_init(feyn_verify_args* args) {
  if (!args) return;
  *args = feyn_verify_args{};
  args->max_degree = -1;
  args->numeric = FEYN_NUMERIC_AUTO;
  args->seed = 1;
}

feyn_status feyn_verify(const char* name, const feyn_verify_args* args, int* passed, char** report) {
  return guard([&] {
    require(name, "name");
    require(args, "args");
    require(passed, "passed");
    const std::string what = name;
    auto degree_or = [&](int fallback) { return args->max_degree >= 0 ? args->max_degree : fallback; };
    auto need_table = [&]() -> const ColourTable& {
      require(args->table, "table");
      return args->table->table;
    };
    VerifyReport r;
    if (what == "wick") {
      r = verify_wick(args->dim > 0 ? args->dim : 3, args->count > 0 ? args->count : 5, degree_or(8), args->seed);
    } else if (what == "frt") {
      require(args->algebra, "algebra");
      const Diagram g = args->diagram ? args->diagram->diagram : Diagram();
      const bool exact = use_exact(args->algebra, args->numeric);
      r = verify_frt(g, args->algebra->spec, table_or_open(args->table), args->with_potential != 0,
                     args->with_potential ? degree_or(8) : degree(g), exact);
    } else if (what == "expfz") {
      r = verify_expfz(need_table(), degree_or(12));
    } else if (what == "fubini") {
      r = verify_fubini(need_table(), args->algebra ? &args->algebra->spec : nullptr, degree_or(12),
                        args->max_vertices > 0 ? args->max_vertices : 3);
    } else if (what == "taylor") {
      r = verify_taylor(args->count > 0 ? args->count : 20, args->dim > 0 ? args->dim : 3, degree_or(6), args->seed);
    } else if (what == "derivative") {
      const AlgebraSpec* a = args->algebra && args->algebra->spec.exact() ? &args->algebra->spec : nullptr;
      r = verify_derivative(need_table(), degree_or(8), a);
    } else if (what == "reduced") {
      require(args->diagram, "root diagram");
      r = verify_reduced(need_table(), args->diagram->diagram, degree_or(8));
    } else {
      fail(ErrorCode::invalid_argument, "unknown check '" + what + "'");
    }
    *passed = r.pass ? 1 : 0;
    if (report) *report = copy_out(r.text);
  });
}

}  // extern "C"
