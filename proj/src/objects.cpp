#include "impg/objects.hpp"

#include <cassert>
#include <utility>

namespace impg {

FlatObj FlatObj::basic(std::string name) {
  return FlatObj(Kind::Basic, std::move(name), {});
}

namespace {

// Splice items of `k` one level deep, then collapse a singleton.
FlatObj make_list(FlatObj::Kind k, std::vector<FlatObj> items,
                  FlatObj (*raw)(std::vector<FlatObj>)) {
  std::vector<FlatObj> out;
  out.reserve(items.size());
  for (auto& it : items) {
    if (it.kind() == k) {
      for (auto& sub : it.items()) out.push_back(sub);
    } else {
      out.push_back(std::move(it));
    }
  }
  if (out.size() == 1) return std::move(out.front());
  return raw(std::move(out));
}

FlatObj raw_sum(std::vector<FlatObj> items) {
  return items.empty() ? FlatObj::initial() : FlatObj::sum(std::move(items));
}

FlatObj raw_prod(std::vector<FlatObj> items) {
  return items.empty() ? FlatObj::terminal() : FlatObj::prod(std::move(items));
}

}  // namespace

FlatObj FlatObj::sum(std::vector<FlatObj> items) {
  // Re-normalize defensively; already-normal input passes through.
  std::vector<FlatObj> out;
  out.reserve(items.size());
  bool needs_splice = false;
  for (const auto& it : items)
    if (it.is_sum()) needs_splice = true;
  if (!needs_splice && items.size() != 1)
    return FlatObj(Kind::Sum, {}, std::move(items));
  return make_list(Kind::Sum, std::move(items), &raw_sum);
}

FlatObj FlatObj::prod(std::vector<FlatObj> items) {
  std::vector<FlatObj> out;
  bool needs_splice = false;
  for (const auto& it : items)
    if (it.is_prod()) needs_splice = true;
  if (!needs_splice && items.size() != 1)
    return FlatObj(Kind::Prod, {}, std::move(items));
  return make_list(Kind::Prod, std::move(items), &raw_prod);
}

bool FlatObj::operator==(const FlatObj& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::Basic) return name_ == o.name_;
  return items_ == o.items_;
}

std::string FlatObj::str() const {
  if (is_basic()) return name_;
  std::string s = is_sum() ? "+(" : "*(";
  bool first = true;
  for (const auto& it : items_) {
    if (!first) s += ' ';
    first = false;
    s += it.str();
  }
  s += ')';
  return s;
}

FlatList as_sum(const FlatObj& x) {
  if (x.is_sum()) return x.items();
  return {x};
}

FlatList as_prod(const FlatObj& x) {
  if (x.is_prod()) return x.items();
  return {x};
}

std::size_t slen(const FlatObj& x) { return x.is_sum() ? x.items().size() : 1; }

std::size_t plen(const FlatObj& x) {
  return x.is_prod() ? x.items().size() : 1;
}

FlatObj rebuild_sum(FlatList items) { return FlatObj::sum(std::move(items)); }

FlatObj rebuild_prod(FlatList items) { return FlatObj::prod(std::move(items)); }

const FlatObj& elem(std::size_t n, const FlatList& items) {
  assert(n < items.size() && "elem index out of range");
  return items[n];
}

}  // namespace impg
