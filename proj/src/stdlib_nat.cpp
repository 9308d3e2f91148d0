#include "impg/stdlib_nat.hpp"

#include "impg/syntax.hpp"

namespace impg {

namespace {

const Nat& leaf_at(const Forest& d, std::size_t i) {
  if (i >= d.size() || !d[i].is_leaf())
    throw StdlibError("malformed Nat datum");
  return d[i].datum();
}

Forest bool_result(bool b) { return {Tree::node(b ? 1 : 0, {})}; }

}  // namespace

Signature nat_signature() {
  Signature sig;
  FlatObj N = FlatObj::basic("N");
  FlatObj in = FlatObj::sum({FlatObj::terminal(), N});   // I + N
  FlatObj nn = FlatObj::prod({N, N});                    // N * N
  FlatObj bb = FlatObj::sum({FlatObj::terminal(), FlatObj::terminal()});
  ObjPtr oN = obj_basic("N");
  ObjPtr oIN = obj_sum(obj_terminal(), oN);
  ObjPtr oNN = obj_prod(oN, oN);
  ObjPtr oBB = obj_sum(obj_terminal(), obj_terminal());
  sig.append({"s", in, N, ArrowKind::Library, oIN, oN});
  sig.append({"p", N, in, ArrowKind::Library, oN, oIN});
  sig.append({"plus", nn, N, ArrowKind::Library, oNN, oN});
  sig.append({"minus", nn, N, ArrowKind::Library, oNN, oN});
  sig.append({"times", nn, N, ArrowKind::Library, oNN, oN});
  sig.append({"gt", nn, bb, ArrowKind::Library, oNN, oBB});
  sig.append({"ge", nn, bb, ArrowKind::Library, oNN, oBB});
  sig.append({"eq", nn, bb, ArrowKind::Library, oNN, oBB});
  return sig;
}

Forest apply_nat(const std::string& name, const Forest& d) {
  if (name == "s") {
    if (d.size() != 1 || d.front().is_leaf())
      throw StdlibError("s expects a tagged argument");
    const Tree& t = d.front();
    if (t.tag() == 0 && t.children().empty()) return {Tree::leaf(0)};
    if (t.tag() == 1) return {Tree::leaf(leaf_at(t.children(), 0) + 1)};
    throw StdlibError("s applied to malformed data");
  }
  if (name == "p") {
    const Nat& n = leaf_at(d, 0);
    if (d.size() != 1) throw StdlibError("p expects one datum");
    if (n == 0) return {Tree::node(0, {})};
    return {Tree::node(1, {Tree::leaf(n - 1)})};
  }
  if (name == "plus" || name == "minus" || name == "times" || name == "gt" ||
      name == "ge" || name == "eq") {
    if (d.size() != 2) throw StdlibError(name + " expects two data");
    const Nat& a = leaf_at(d, 0);
    const Nat& b = leaf_at(d, 1);
    if (name == "plus") return {Tree::leaf(a + b)};
    if (name == "minus") return {Tree::leaf(a > b ? Nat(a - b) : Nat(0))};
    if (name == "times") return {Tree::leaf(a * b)};
    if (name == "gt") return bool_result(a > b);
    if (name == "ge") return bool_result(a >= b);
    return bool_result(a == b);
  }
  throw StdlibError("unknown Nat arrow " + name);
}

const std::vector<Library>& library_registry() {
  static const std::vector<Library> registry = [] {
    std::vector<Library> libs;
    Library nat;
    nat.name = "Nat";
    nat.signature = nat_signature();
    nat.parse_datum = [](const std::string& s) { return nat_from_decimal(s); };
    nat.print_datum = [](const BasicDatum& d) { return to_string(d); };
    nat.apply = [](const std::string& name,
                   const Forest& d) -> std::optional<Forest> {
      if (!nat_signature().lookup(name)) return std::nullopt;
      return apply_nat(name, d);
    };
    libs.push_back(std::move(nat));
    return libs;
  }();
  return registry;
}

bool library_provides(const std::string& name) {
  for (const Library& lib : library_registry())
    if (lib.signature.lookup(name)) return true;
  return false;
}

Forest apply_library(const std::string& name, const Forest& d) {
  for (const Library& lib : library_registry())
    if (auto r = lib.apply(name, d)) return *r;
  throw StdlibError("no library provides arrow " + name);
}

}  // namespace impg
