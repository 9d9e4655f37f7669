#include "feyn/colour_table.hpp"

#include "feyn/error.hpp"

namespace feyn {

std::string_view kind_name(VertexKind kind) {
  switch (kind) {
    case VertexKind::coupon:
      return "coupon";
    case VertexKind::cyclic:
      return "cyclic";
    case VertexKind::symmetric:
      return "symmetric";
  }
  return "?";
}

void ColourTable::add(const std::string& name, ColourShape shape, bool special) {
  if (name.empty()) fail(ErrorCode::invalid_argument, "empty colour name");
  if (index_.count(name)) fail(ErrorCode::invalid_argument, "duplicate colour '" + name + "'");
  if (shape.kind != VertexKind::coupon && shape.inputs != 0)
    fail(ErrorCode::invalid_argument, "only coupon colours have inputs");
  if (shape.valence() == 0 && !special)
    fail(ErrorCode::invalid_argument,
         "ordinary colour '" + name + "' has valence 0, which carries no grading");
  index_[name] = entries_.size();
  entries_.push_back({name, shape, special});
}

void ColourTable::set_bold(const std::string& ordinary_name, const std::string& special_name) {
  const ColourEntry* o = find(ordinary_name);
  const ColourEntry* s = find(special_name);
  if (!o || !s) fail(ErrorCode::unknown_colour, "bold partner refers to an unknown colour");
  if (o->special) fail(ErrorCode::invalid_argument, "'" + ordinary_name + "' is not ordinary");
  if (!s->special) fail(ErrorCode::invalid_argument, "'" + special_name + "' is not special");
  if (o->shape != s->shape)
    fail(ErrorCode::invalid_argument,
         "bold partner '" + special_name + "' differs in kind or valence from '" +
             ordinary_name + "'");
  if (bold_.count(ordinary_name))
    fail(ErrorCode::invalid_argument, "'" + ordinary_name + "' already has a partner");
  if (unbold_.count(special_name))
    fail(ErrorCode::invalid_argument, "partner map is not injective at '" + special_name + "'");
  bold_[ordinary_name] = special_name;
  unbold_[special_name] = ordinary_name;
}

void ColourTable::validate() const {
  for (const auto& e : entries_) {
    if (!e.special && !bold_.count(e.name))
      fail(ErrorCode::invalid_argument, "ordinary colour '" + e.name + "' has no special partner");
  }
}

const ColourEntry* ColourTable::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::vector<ColourEntry> ColourTable::ordinary() const {
  std::vector<ColourEntry> out;
  for (const auto& e : entries_)
    if (!e.special) out.push_back(e);
  return out;
}

std::optional<std::string> ColourTable::bold_of(const std::string& ordinary_name) const {
  auto it = bold_.find(ordinary_name);
  if (it == bold_.end()) {
    if (open_ && !find(ordinary_name) && !open_special(ordinary_name)) return ordinary_name + "*";
    return std::nullopt;
  }
  return it->second;
}

std::optional<std::string> ColourTable::ordinary_of(const std::string& special_name) const {
  auto it = unbold_.find(special_name);
  if (it == unbold_.end()) {
    if (open_ && !find(special_name) && open_special(special_name))
      return special_name.substr(0, special_name.size() - 1);
    return std::nullopt;
  }
  return it->second;
}

bool ColourTable::open_special(const std::string& name) {
  return name.size() > 1 && name.back() == '*';
}

ColourTable ColourTable::open() {
  ColourTable t;
  t.open_ = true;
  return t;
}

}  // namespace feyn
