#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace impg {

// A sum/product expression as nested variable-arity lists in normal form:
// no list of length one, and no sum list directly inside a sum list (dually
// for products). SumList{} is the initial object, ProdList{} the terminal one.
class FlatObj {
 public:
  enum class Kind { Basic, Sum, Prod };

  static FlatObj basic(std::string name);
  // Normalizing constructors: splice nested lists of the same kind and
  // collapse singletons.
  static FlatObj sum(std::vector<FlatObj> items);
  static FlatObj prod(std::vector<FlatObj> items);
  static FlatObj initial() { return FlatObj(Kind::Sum, {}, {}); }
  static FlatObj terminal() { return FlatObj(Kind::Prod, {}, {}); }

  Kind kind() const { return kind_; }
  bool is_basic() const { return kind_ == Kind::Basic; }
  bool is_sum() const { return kind_ == Kind::Sum; }
  bool is_prod() const { return kind_ == Kind::Prod; }
  bool is_initial() const { return is_sum() && items_.empty(); }
  bool is_terminal() const { return is_prod() && items_.empty(); }

  const std::string& name() const { return name_; }
  const std::vector<FlatObj>& items() const { return items_; }

  bool operator==(const FlatObj& o) const;
  bool operator!=(const FlatObj& o) const { return !(*this == o); }

  // Diagnostic form: `A`, `+(A *(B C))`, `+()`, `*()`.
  std::string str() const;

 private:
  FlatObj(Kind k, std::string n, std::vector<FlatObj> it)
      : kind_(k), name_(std::move(n)), items_(std::move(it)) {}

  Kind kind_;
  std::string name_;
  std::vector<FlatObj> items_;
};

using FlatList = std::vector<FlatObj>;

// The sum view: a sum's summands, [x] for a non-sum, [] for the initial
// object. Every object is a sum of its as_sum items.
FlatList as_sum(const FlatObj& x);
// Dual product view.
FlatList as_prod(const FlatObj& x);

std::size_t slen(const FlatObj& x);
std::size_t plen(const FlatObj& x);

// Normal form of the sum (product) of already-normal items; inverse to
// as_sum/as_prod.
FlatObj rebuild_sum(FlatList items);
FlatObj rebuild_prod(FlatList items);

// Zero-based indexing; n must be in range.
const FlatObj& elem(std::size_t n, const FlatList& items);

}  // namespace impg
