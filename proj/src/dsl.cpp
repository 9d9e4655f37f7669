#include "feyn/dsl.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "feyn/error.hpp"
#include "feyn/iso.hpp"

namespace feyn {

namespace {

struct Token {
  enum Kind { ident, number, punct, end } kind = end;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*';
}

std::string where(int line, int col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": ";
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&]() {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      t.kind = Token::ident;
      while (i < s.size() && ident_char(s[i])) {
        t.text += s[i];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::number;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        t.text += s[i];
        advance();
      }
    } else if (std::string_view("(),;.-=").find(c) != std::string_view::npos) {
      t.kind = Token::punct;
      t.text = std::string(1, c);
      advance();
    } else {
      fail(ErrorCode::parse, where(line, col) + "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back(std::move(t));
  }
  Token e;
  e.line = line;
  e.col = col;
  out.push_back(e);
  return out;
}

struct Ref {
  std::string name;
  int slot = 0;  // 1-based
  Token at;
};

struct DeclaredVertex {
  std::string name;
  RawVertex raw;
  int first_id = 0;
  Token at;
};

class DiagramParser {
 public:
  DiagramParser(std::string_view text, const ColourTable& table) : toks_(lex(text)), table_(table) {}

  ParsedDiagram run() {
    if (is_word("type")) header();
    while (peek().kind != Token::end) statement();
    return build();
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool is_word(std::string_view w) const { return peek().kind == Token::ident && peek().text == w; }
  bool is_punct(char c) const { return peek().kind == Token::punct && peek().text[0] == c; }

  [[noreturn]] void syntax(const Token& t, const std::string& msg) const {
    fail(ErrorCode::parse, where(t.line, t.col) + msg);
  }
  [[noreturn]] void semantic(const Token& t, const std::string& msg) const {
    fail(ErrorCode::invalid_argument, where(t.line, t.col) + msg);
  }
  std::string describe(const Token& t) const {
    return t.kind == Token::end ? "end of input" : "'" + t.text + "'";
  }

  void expect(char c) {
    if (!is_punct(c)) syntax(peek(), "expected '" + std::string(1, c) + "', found " + describe(peek()));
    take();
  }
  void keyword(std::string_view w) {
    if (!is_word(w)) syntax(peek(), "expected '" + std::string(w) + "', found " + describe(peek()));
    take();
  }
  std::string identifier() {
    if (peek().kind != Token::ident) syntax(peek(), "expected a name, found " + describe(peek()));
    return take().text;
  }
  int natural() {
    if (peek().kind != Token::number) syntax(peek(), "expected a number, found " + describe(peek()));
    const Token& t = take();
    if (t.text.size() > 9) semantic(t, "number too large");
    return std::stoi(t.text);
  }
  Ref ref() {
    Ref r;
    r.at = peek();
    r.name = identifier();
    expect('.');
    r.slot = natural();
    return r;
  }

  void header() {
    keyword("type");
    expect('(');
    src_ = natural();
    expect(',');
    tgt_ = natural();
    expect(')');
    typed_ = true;
    in_.assign(src_, std::nullopt);
    out_.assign(tgt_, std::nullopt);
  }

  void statement() {
    const Token at = peek();
    if (is_word("vertex")) {
      take();
      vertex(at);
    } else if (is_word("edge")) {
      take();
      edge();
    } else if (is_word("wire")) {
      take();
      const Token name_at = peek();
      const std::string name = identifier();
      declare(name, name_at);
      wires_[name] = static_cast<int>(wires_.size());
      expect(';');
    } else if (is_word("in") || is_word("out")) {
      const bool input = take().text == "in";
      assignment(at, input);
    } else if (is_word("type")) {
      syntax(at, "type header must come first");
    } else {
      syntax(at, "expected a statement, found " + describe(at));
    }
  }

  void declare(const std::string& name, const Token& at) {
    if (vertex_index_.count(name) || wires_.count(name)) semantic(at, "duplicate name '" + name + "'");
  }

  void vertex(const Token& at) {
    DeclaredVertex v;
    v.at = at;
    const Token name_at = peek();
    v.name = identifier();
    declare(v.name, name_at);
    const Token kind_at = peek();
    const std::string kind = identifier();
    int m = 0, n = 0;
    if (kind == "sym") {
      v.raw.kind = VertexKind::symmetric;
    } else if (kind == "cyc") {
      v.raw.kind = VertexKind::cyclic;
    } else if (kind == "coupon") {
      v.raw.kind = VertexKind::coupon;
      expect('(');
      m = natural();
      expect(',');
      n = natural();
      expect(')');
    } else {
      syntax(kind_at, "unknown vertex kind '" + kind + "'");
    }
    v.raw.colour = identifier();
    keyword("legs");
    const Token legs_at = peek();
    const int legs = natural();
    if (legs > 64) semantic(legs_at, "too many legs");
    if (v.raw.kind == VertexKind::coupon) {
      if (m + n != legs) semantic(legs_at, "coupon(" + std::to_string(m) + "," + std::to_string(n) +
                                               ") needs " + std::to_string(m + n) + " legs");
      v.raw.inputs = m;
    }
    if (is_word("root")) {
      take();
      v.raw.root = true;
    }
    expect(';');
    v.first_id = next_id_;
    for (int s = 0; s < legs; ++s) v.raw.slots.push_back(next_id_++);
    vertex_index_[v.name] = static_cast<int>(vertices_.size());
    vertices_.push_back(std::move(v));
  }

  // Half-edge id of a vertex slot, checking range and reuse.
  int slot_id(const Ref& r) {
    auto it = vertex_index_.find(r.name);
    if (it == vertex_index_.end()) {
      if (wires_.count(r.name)) semantic(r.at, "wire ends can only be used by in/out");
      semantic(r.at, "unknown vertex '" + r.name + "'");
    }
    const DeclaredVertex& v = vertices_[it->second];
    if (r.slot < 1 || r.slot > static_cast<int>(v.raw.slots.size()))
      semantic(r.at, "slot out of range: " + r.name + "." + std::to_string(r.slot));
    const int id = v.first_id + r.slot - 1;
    use(r, "s" + std::to_string(id));
    return id;
  }

  void use(const Ref& r, const std::string& key) {
    if (!used_.insert(key).second)
      semantic(r.at, r.name + "." + std::to_string(r.slot) + " is used twice");
  }

  void edge() {
    const Ref a = ref();
    expect('-');
    const Ref b = ref();
    const int ha = slot_id(a);
    const int hb = slot_id(b);
    int tag = 0;
    for (;;) {
      if (is_word("tag")) {
        take();
        const Token t = peek();
        const int k = natural();
        if (k >= kRootEdgeTag) semantic(t, "tag too large");
        tag |= k;
      } else if (is_word("root")) {
        take();
        tag |= kRootEdgeTag;
      } else {
        break;
      }
    }
    expect(';');
    raw_.matching[ha] = hb;
    raw_.matching[hb] = ha;
    if (tag != 0) raw_.tags[ha] = tag;
  }

  void assignment(const Token& at, bool input) {
    if (!typed_) semantic(at, "in/out needs a type header");
    const Token k_at = peek();
    const int k = natural();
    expect('=');
    const Ref r = ref();
    expect(';');
    auto& slots = input ? in_ : out_;
    const char* what = input ? "in" : "out";
    if (k < 1 || k > static_cast<int>(slots.size()))
      semantic(k_at, std::string(what) + " index " + std::to_string(k) + " out of range");
    if (slots[k - 1]) semantic(k_at, std::string("duplicate ") + what + " index " + std::to_string(k));
    if (auto w = wires_.find(r.name); w != wires_.end()) {
      if (r.slot < 1 || r.slot > 2) semantic(r.at, "wire end out of range: " + r.name + "." +
                                                       std::to_string(r.slot));
      use(r, "w" + std::to_string(w->second) + "." + std::to_string(r.slot));
      slots[k - 1] = Target{true, w->second * 2 + r.slot - 1};
    } else {
      slots[k - 1] = Target{false, slot_id(r)};
    }
  }

  ParsedDiagram build() {
    for (const DeclaredVertex& v : vertices_) raw_.vertices.push_back(v.raw);
    raw_.bare_edges = static_cast<int>(wires_.size());
    ParsedDiagram out;
    out.diagram = build_diagram(raw_, table_);
    out.typed = typed_;
    if (!typed_) return out;

    // Legs are numbered by unmatched slot id, then two per wire.
    std::map<int, int> leg_index;
    for (const DeclaredVertex& v : vertices_)
      for (int id : v.raw.slots)
        if (!raw_.matching.count(id)) {
          const int k = static_cast<int>(leg_index.size());
          leg_index[id] = k;
        }
    const int legs = static_cast<int>(leg_index.size());
    std::set<int> covered;
    auto resolve = [&](const std::vector<std::optional<Target>>& slots, const char* what) {
      std::vector<int> order;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (!slots[k])
          fail(ErrorCode::invalid_argument, std::string("missing ") + what + " index " +
                                                std::to_string(k + 1));
        const int e = slots[k]->wire ? legs + slots[k]->id : leg_index.at(slots[k]->id);
        covered.insert(e);
        order.push_back(e);
      }
      return order;
    };
    out.inputs = resolve(in_, "in");
    out.outputs = resolve(out_, "out");
    for (const DeclaredVertex& v : vertices_)
      for (std::size_t s = 0; s < v.raw.slots.size(); ++s) {
        auto it = leg_index.find(v.raw.slots[s]);
        if (it != leg_index.end() && !covered.count(it->second))
          semantic(v.at, "slot " + v.name + "." + std::to_string(s + 1) + " is not connected");
      }
    for (const auto& [name, w] : wires_)
      for (int e = 0; e < 2; ++e)
        if (!covered.count(legs + 2 * w + e))
          fail(ErrorCode::invalid_argument, "wire end " + name + "." + std::to_string(e + 1) +
                                                " is not connected");
    return out;
  }

  struct Target {
    bool wire = false;
    int id = 0;  // slot id, or wire end index 2w + e
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ColourTable& table_;
  bool typed_ = false;
  int src_ = 0, tgt_ = 0;
  std::vector<std::optional<Target>> in_, out_;
  std::vector<DeclaredVertex> vertices_;
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> wires_;
  std::set<std::string> used_;
  RawDiagram raw_;
  int next_id_ = 0;
};

std::string kind_word(const Vertex& v) {
  switch (v.kind) {
    case VertexKind::symmetric: return "sym";
    case VertexKind::cyclic: return "cyc";
    case VertexKind::coupon:
      return "coupon(" + std::to_string(v.inputs) + "," + std::to_string(v.valence() - v.inputs) + ")";
  }
  return "";
}

std::vector<std::string> statements(const Diagram& d, const std::vector<int>* in,
                                    const std::vector<int>* out) {
  std::vector<std::string> lines;
  if (in) lines.push_back("type (" + std::to_string(in->size()) + "," + std::to_string(out->size()) + ")");
  const auto& vs = d.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vertex& v = vs[i];
    for (char c : v.colour)
      if (!ident_char(c) || !ident_start(v.colour[0]))
        fail(ErrorCode::invalid_argument, "colour '" + v.colour + "' cannot be written");
    lines.push_back("vertex v" + std::to_string(i + 1) + " " + kind_word(v) + " " + v.colour + " legs " +
                    std::to_string(v.valence()) + (v.root ? " root;" : ";"));
  }
  auto slot_ref = [&](HalfEdge h) {
    const Owner& o = d.owner(h);
    return "v" + std::to_string(o.index + 1) + "." + std::to_string(o.slot + 1);
  };
  std::map<int, std::string> endpoint_ref;
  int wires = 0;
  std::vector<std::string> wire_lines;
  for (const auto& [a, b] : d.edges()) {
    const bool ea = d.is_endpoint(a), eb = d.is_endpoint(b);
    if ((ea || eb) && d.tag(a) != 0)
      fail(ErrorCode::invalid_argument, "tagged legs cannot be written");
    if (!ea && !eb) {
      std::string s = "edge " + slot_ref(a) + "-" + slot_ref(b);
      const int tag = d.tag(a);
      if (tag & ~kRootEdgeTag) s += " tag " + std::to_string(tag & ~kRootEdgeTag);
      if (tag & kRootEdgeTag) s += " root";
      lines.push_back(s + ";");
    } else if (ea && eb) {
      const std::string w = "w" + std::to_string(++wires);
      wire_lines.push_back("wire " + w + ";");
      endpoint_ref[d.owner(a).index] = w + ".1";
      endpoint_ref[d.owner(b).index] = w + ".2";
    } else {
      endpoint_ref[d.owner(ea ? a : b).index] = slot_ref(ea ? b : a);
    }
  }
  lines.insert(lines.end(), wire_lines.begin(), wire_lines.end());
  if (in) {
    for (std::size_t k = 0; k < in->size(); ++k)
      lines.push_back("in " + std::to_string(k + 1) + " = " + endpoint_ref.at((*in)[k]) + ";");
    for (std::size_t k = 0; k < out->size(); ++k)
      lines.push_back("out " + std::to_string(k + 1) + " = " + endpoint_ref.at((*out)[k]) + ";");
  }
  return lines;
}

std::string join(const std::vector<std::string>& lines, const char* sep, bool trailing) {
  std::string s;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) s += sep;
    s += lines[i];
  }
  if (trailing && !lines.empty()) s += sep;
  return s;
}

}  // namespace

ParsedDiagram parse_diagram(std::string_view text, const ColourTable& table) {
  return DiagramParser(text, table).run();
}

std::string serialize(const Diagram& d) { return join(statements(d, nullptr, nullptr), "\n", true); }
std::string serialize(const TypedDiagram& t) {
  return join(statements(t.base(), &t.inputs(), &t.outputs()), "\n", true);
}
std::string serialize_line(const Diagram& d) { return join(statements(d, nullptr, nullptr), " ", false); }
std::string serialize_line(const TypedDiagram& t) {
  return join(statements(t.base(), &t.inputs(), &t.outputs()), " ", false);
}

ColourTable parse_table(std::string_view text) {
  struct Line {
    ColourEntry entry;
    std::string partner;
    int line;
  };
  std::vector<Line> lines;
  std::optional<VertexKind> section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  auto bad = [&](const std::string& msg) {
    fail(ErrorCode::parse, "line " + std::to_string(number) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    std::vector<std::string> w;
    for (std::string s; words >> s;) w.push_back(s);
    if (w.empty()) continue;
    if (w[0].front() == '[') {
      if (w.size() != 1 || w[0].back() != ']') bad("malformed section header");
      const std::string name = w[0].substr(1, w[0].size() - 2);
      if (name == "symmetric") section = VertexKind::symmetric;
      else if (name == "cyclic") section = VertexKind::cyclic;
      else if (name == "coupon") section = VertexKind::coupon;
      else bad("unknown section '" + name + "'");
      continue;
    }
    if (!section) bad("colour outside a section");
    if (w.size() < 3 || w.size() > 4) bad("expected 'valence name ordinary|special [partner]'");
    Line l;
    l.line = number;
    l.entry.name = w[1];
    l.entry.shape.kind = *section;
    try {
      if (*section == VertexKind::coupon) {
        const auto comma = w[0].find(',');
        if (comma == std::string::npos) bad("coupon valence must be 'inputs,outputs'");
        std::size_t used = 0;
        l.entry.shape.inputs = std::stoi(w[0].substr(0, comma), &used);
        if (used != comma) bad("malformed valence");
        const std::string rest = w[0].substr(comma + 1);
        l.entry.shape.outputs = std::stoi(rest, &used);
        if (used != rest.size()) bad("malformed valence");
      } else {
        std::size_t used = 0;
        l.entry.shape.outputs = std::stoi(w[0], &used);
        if (used != w[0].size()) bad("malformed valence");
      }
    } catch (const std::logic_error&) {
      bad("malformed valence '" + w[0] + "'");
    }
    if (l.entry.shape.inputs < 0 || l.entry.shape.outputs < 0 || l.entry.shape.valence() > 64)
      bad("valence out of range");
    if (w[2] == "ordinary") l.entry.special = false;
    else if (w[2] == "special") l.entry.special = true;
    else bad("expected ordinary or special, found '" + w[2] + "'");
    if (w.size() == 4) {
      if (l.entry.special) bad("only ordinary colours name a partner");
      l.partner = w[3];
    }
    lines.push_back(std::move(l));
  }

  ColourTable table;
  std::set<std::string> names;
  for (const Line& l : lines) {
    number = l.line;
    if (!names.insert(l.entry.name).second) bad("duplicate colour '" + l.entry.name + "'");
    table.add(l.entry.name, l.entry.shape, l.entry.special);
  }
  for (const Line& l : lines) {
    if (l.entry.special) continue;
    number = l.line;
    const std::string partner = l.partner.empty() ? l.entry.name + "*" : l.partner;
    const ColourEntry* p = table.find(partner);
    if (!p) {
      table.add(partner, l.entry.shape, true);
    } else if (!p->special || p->shape != l.entry.shape) {
      bad("partner '" + partner + "' must be a special colour of the same shape");
    }
    table.set_bold(l.entry.name, partner);
  }
  table.validate();
  return table;
}

namespace {

using nlohmann::json;

struct Value {
  double real;
  std::optional<Rational> exact;
};

Value number_of(const json& j, const std::string& what) {
  if (j.is_number_integer()) {
    const Rational q = j.is_number_unsigned() ? Rational(j.get<unsigned long>()) : Rational(j.get<long>());
    return {q.get_d(), q};
  }
  if (j.is_number_float()) return {j.get<double>(), std::nullopt};
  if (j.is_string()) {
    const Rational q = parse_rational(j.get<std::string>());
    return {q.get_d(), q};
  }
  fail(ErrorCode::parse, what + ": expected a number or a \"p/q\" string");
}

void flatten(const json& j, std::vector<json>& out) {
  if (j.is_array()) {
    for (const json& x : j) flatten(x, out);
  } else {
    out.push_back(j);
  }
}

struct Values {
  std::vector<double> real;
  std::optional<std::vector<Rational>> exact = std::vector<Rational>{};

  void add(const Value& v) {
    real.push_back(v.real);
    if (exact && v.exact) exact->push_back(*v.exact);
    else exact.reset();
  }
};

}  // namespace

AlgebraSpec parse_algebra(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("algebra file: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::parse, "algebra file must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    fail(ErrorCode::parse, "algebra file needs an integer \"dim\"");
  const int dim = j["dim"].get<int>();
  if (dim < 1 || dim > 16) fail(ErrorCode::invalid_argument, "dim must lie in 1..16");

  Values g;
  if (!j.contains("pairing") || (j["pairing"].is_string() && j["pairing"] == "identity")) {
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) g.add({a == b ? 1.0 : 0.0, Rational(a == b ? 1 : 0)});
  } else {
    std::vector<json> flat;
    flatten(j["pairing"], flat);
    if (static_cast<int>(flat.size()) != dim * dim)
      fail(ErrorCode::invalid_argument, "pairing needs dim*dim entries");
    for (const json& x : flat) g.add(number_of(x, "pairing"));
  }
  AlgebraSpec a(dim, g.real, g.exact);

  if (j.contains("tensors")) {
    if (!j["tensors"].is_object()) fail(ErrorCode::parse, "\"tensors\" must be an object");
    for (const auto& [name, t] : j["tensors"].items()) {
      const std::string what = "tensor '" + name + "'";
      if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string())
        fail(ErrorCode::parse, what + " needs a \"kind\"");
      const std::string kind = t["kind"].get<std::string>();
      ColourShape shape;
      auto count = [&](const char* key) {
        if (!t.contains(key) || !t[key].is_number_integer() || t[key].get<int>() < 0)
          fail(ErrorCode::parse, what + " needs a non-negative \"" + key + "\"");
        return t[key].get<int>();
      };
      if (kind == "symmetric" || kind == "sym") {
        shape = {VertexKind::symmetric, 0, count("valence")};
      } else if (kind == "cyclic" || kind == "cyc") {
        shape = {VertexKind::cyclic, 0, count("valence")};
      } else if (kind == "coupon") {
        shape = {VertexKind::coupon, count("inputs"), count("outputs")};
      } else {
        fail(ErrorCode::parse, what + ": unknown kind '" + kind + "'");
      }
      if (shape.valence() > 12) fail(ErrorCode::limit, what + ": valence above 12");
      std::size_t size = 1;
      for (int k = 0; k < shape.valence(); ++k) size *= dim;
      if (size > (1u << 22)) fail(ErrorCode::limit, what + " is too large");
      Values v;
      if (t.contains("constant")) {
        const Value c = number_of(t["constant"], what);
        for (std::size_t k = 0; k < size; ++k) v.add(c);
      } else if (t.contains("entries")) {
        std::vector<json> flat;
        flatten(t["entries"], flat);
        if (flat.size() != size)
          fail(ErrorCode::invalid_argument, what + " needs " + std::to_string(size) + " entries");
        for (const json& x : flat) v.add(number_of(x, what));
      } else {
        fail(ErrorCode::parse, what + " needs \"entries\" or \"constant\"");
      }
      a.add_tensor(name, shape, std::move(v.real), std::move(v.exact));
    }
  }
  if (j.contains("bold")) {
    if (!j["bold"].is_object()) fail(ErrorCode::parse, "\"bold\" must be an object");
    for (const auto& [o, s] : j["bold"].items()) {
      if (!s.is_string()) fail(ErrorCode::parse, "\"bold\" values must be colour names");
      a.set_bold(o, s.get<std::string>());
    }
  }
  a.validate();
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  if (f.bad()) fail(ErrorCode::io, "error reading '" + path + "'");
  return s.str();
}

std::string render_enumeration(const Enumeration& e) {
  std::string out = "degree\taut\tcode\tdiagram\n";
  for (const EnumEntry& x : e.entries) {
    out += std::to_string(x.degree) + "\t" + std::to_string(x.code.aut_order) + "\t" + x.code.hex() +
           "\t" + serialize_line(x.representative) + "\n";
  }
  return out;
}

std::string render_enumeration_json(const Enumeration& e) {
  json rows = json::array();
  for (const EnumEntry& x : e.entries)
    rows.push_back({{"degree", x.degree},
                    {"aut", x.code.aut_order},
                    {"code", x.code.hex()},
                    {"diagram", serialize_line(x.representative)}});
  json out = {{"max_degree", e.max_degree},
              {"connected", e.flags.connected},
              {"reduced", e.flags.reduced},
              {"classes", rows}};
  return out.dump(2) + "\n";
}

}  // namespace feyn
