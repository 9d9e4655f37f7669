#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace feyn {

enum class VertexKind { coupon = 0, cyclic = 1, symmetric = 2 };

std::string_view kind_name(VertexKind kind);

// Shape of a colour entry: kind plus valence. For coupon colours the valence
// is split into inputs and outputs; for the other kinds inputs is zero.
struct ColourShape {
  VertexKind kind = VertexKind::symmetric;
  int inputs = 0;
  int outputs = 0;

  int valence() const { return inputs + outputs; }
  auto operator<=>(const ColourShape&) const = default;
};

struct ColourEntry {
  std::string name;
  ColourShape shape;
  bool special = false;
};

// The valence-indexed colour sets of the three vertex kinds, split into
// ordinary and special colours, plus the ordinary -> special injection.
class ColourTable {
 public:
  // Adds a colour. Throws on duplicate names.
  void add(const std::string& name, ColourShape shape, bool special);
  // Declares special_name as the partner of ordinary_name. Both must exist,
  // have the same shape and kinds ordinary/special respectively.
  void set_bold(const std::string& ordinary_name, const std::string& special_name);

  // Checks injectivity and totality of the partner map; throws otherwise.
  void validate() const;

  const ColourEntry* find(const std::string& name) const;
  const std::vector<ColourEntry>& entries() const { return entries_; }
  std::vector<ColourEntry> ordinary() const;

  std::optional<std::string> bold_of(const std::string& ordinary_name) const;
  std::optional<std::string> ordinary_of(const std::string& special_name) const;

  // A table that accepts any colour with whatever shape the vertex
  // declares. Unlisted colours are ordinary, except names ending in '*',
  // which are the special partners of the name without the '*'.
  static ColourTable open();
  static bool open_special(const std::string& name);
  bool is_open() const { return open_; }

 private:
  std::vector<ColourEntry> entries_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, std::string> bold_;
  std::map<std::string, std::string> unbold_;
  bool open_ = false;
};

}  // namespace feyn
