#include "impg/forest.hpp"

#include <limits>
#include <utility>

namespace impg {

Tree Tree::leaf(BasicDatum datum) {
  Tree t;
  t.leaf_ = true;
  t.datum_ = std::move(datum);
  return t;
}

Tree Tree::node(std::uint64_t tag, Forest children) {
  Tree t;
  t.leaf_ = false;
  t.tag_ = tag;
  t.children_ = std::make_shared<const Forest>(std::move(children));
  return t;
}

const Forest& Tree::children() const {
  static const Forest empty;
  return children_ ? *children_ : empty;
}

bool Tree::operator==(const Tree& o) const {
  if (leaf_ != o.leaf_) return false;
  if (leaf_) return datum_ == o.datum_;
  return tag_ == o.tag_ && children() == o.children();
}

Tree mk_node(std::uint64_t tag, Forest children) {
  if (children.size() == 1 && !children.front().is_leaf()) {
    const Tree& only = children.front();
    std::uint64_t inner = only.tag();
    if (tag > std::numeric_limits<std::uint64_t>::max() - inner)
      throw ForestError("tag overflow while normalizing");
    return Tree::node(tag + inner, only.children());
  }
  return Tree::node(tag, std::move(children));
}

Forest concat(Forest a, const Forest& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool check_data(const Forest& d, const FlatObj& t) {
  switch (t.kind()) {
    case FlatObj::Kind::Basic:
      return d.size() == 1 && d.front().is_leaf();
    case FlatObj::Kind::Sum: {
      if (d.size() != 1 || d.front().is_leaf()) return false;
      const Tree& n = d.front();
      if (n.tag() >= t.items().size()) return false;
      return check_data(n.children(), t.items()[n.tag()]);
    }
    case FlatObj::Kind::Prod: {
      if (d.size() != t.items().size()) return false;
      for (std::size_t i = 0; i < d.size(); ++i)
        if (!check_data({d[i]}, t.items()[i])) return false;
      return true;
    }
  }
  return false;
}

bool check_data_strict(const Forest& d, const FlatObj& t) {
  // The Nat datum representation is well-formed by construction, so the
  // strict check coincides with the structural one for the shipped library.
  return check_data(d, t);
}

std::size_t forest_size(const Forest& d) {
  std::size_t n = 0;
  for (const Tree& t : d) {
    ++n;
    if (!t.is_leaf()) n += forest_size(t.children());
  }
  return n;
}

bool is_normal(const Forest& d) {
  for (const Tree& t : d) {
    if (t.is_leaf()) continue;
    const Forest& c = t.children();
    if (c.size() == 1 && !c.front().is_leaf()) return false;
    if (!is_normal(c)) return false;
  }
  return true;
}

}  // namespace impg
