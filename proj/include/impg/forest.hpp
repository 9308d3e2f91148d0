#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "impg/nat.hpp"
#include "impg/objects.hpp"

namespace impg {

// Leaf payload. Owned conceptually by the standard-library registry; the only
// shipped library is Nat, so the payload is an unbounded natural.
using BasicDatum = Nat;

class Tree;
using Forest = std::vector<Tree>;

// A tree of the tagged-forest data model. Normal form: no node whose children
// are exactly one node (adjacent tags merge).
class Tree {
 public:
  static Tree leaf(BasicDatum datum);
  // Raw constructor; does not merge tags. Prefer mk_node.
  static Tree node(std::uint64_t tag, Forest children);

  bool is_leaf() const { return leaf_; }
  const BasicDatum& datum() const { return datum_; }
  std::uint64_t tag() const { return tag_; }
  const Forest& children() const;

  bool operator==(const Tree& o) const;
  bool operator!=(const Tree& o) const { return !(*this == o); }

 private:
  Tree() = default;
  bool leaf_ = false;
  BasicDatum datum_ = 0;
  std::uint64_t tag_ = 0;
  std::shared_ptr<const Forest> children_;
};

class ForestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Normalizing node constructor: mk_node(m, [node(n, d)]) = node(m+n, d).
// Tag addition is checked; overflow aborts with ForestError.
Tree mk_node(std::uint64_t tag, Forest children);

Forest concat(Forest a, const Forest& b);

// Structural data check against a flat object: a tagged node matches a sum
// when its tag selects a summand and the children match it; a forest matches
// a product factor-wise; the empty forest matches *(); a leaf matches any
// basic object regardless of datum kind (deliberately permissive).
bool check_data(const Forest& d, const FlatObj& t);

// Strict variant: also requires every leaf reachable at a basic object to be
// a well-formed datum of the (single shipped) library. Off by default.
bool check_data_strict(const Forest& d, const FlatObj& t);

// Total count of leaf and node constructors.
std::size_t forest_size(const Forest& d);

// True iff no node's children consist of exactly one node.
bool is_normal(const Forest& d);

}  // namespace impg
