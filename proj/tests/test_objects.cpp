#include "doctest.h"
#include "impg/objects.hpp"
#include "impg/syntax.hpp"

#include <random>

using namespace impg;

namespace {

FlatObj A() { return FlatObj::basic("A"); }
FlatObj B() { return FlatObj::basic("B"); }
FlatObj C() { return FlatObj::basic("C"); }

ObjPtr random_obj(std::mt19937_64& rng, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    switch (rng() % 4) {
      case 0: return obj_basic("A");
      case 1: return obj_basic("B");
      case 2: return obj_terminal();
      default: return obj_initial();
    }
  }
  ObjPtr l = random_obj(rng, depth - 1);
  ObjPtr r = random_obj(rng, depth - 1);
  return rng() % 2 ? obj_sum(l, r) : obj_prod(l, r);
}

}  // namespace

TEST_CASE("flatten examples") {
  // A + (B + C) collapses to one sum list.
  ObjPtr x = obj_sum(obj_basic("A"), obj_sum(obj_basic("B"), obj_basic("C")));
  CHECK(flatten(x) == FlatObj::sum({A(), B(), C()}));

  CHECK(flatten(obj_terminal()) == FlatObj::terminal());
  CHECK(flatten(obj_initial()) == FlatObj::initial());

  // A * I collapses to the basic object.
  CHECK(flatten(obj_prod(obj_basic("A"), obj_terminal())) == A());
}

TEST_CASE("as_sum / as_prod views") {
  CHECK(as_sum(FlatObj::sum({A(), B()})) == FlatList{A(), B()});
  CHECK(as_sum(A()) == FlatList{A()});
  CHECK(as_sum(FlatObj::initial()).empty());

  CHECK(as_prod(FlatObj::prod({A(), B()})) == FlatList{A(), B()});
  CHECK(as_prod(FlatObj::sum({A(), B()})) ==
        FlatList{FlatObj::sum({A(), B()})});
  CHECK(as_prod(FlatObj::terminal()).empty());
}

TEST_CASE("slen / plen") {
  CHECK(slen(FlatObj::sum({A(), B(), C()})) == 3);
  CHECK(plen(FlatObj::terminal()) == 0);
  CHECK(slen(FlatObj::initial()) == 0);
  CHECK(slen(A()) == 1);
  CHECK(plen(FlatObj::sum({A(), B()})) == 1);
}

TEST_CASE("rebuild") {
  CHECK(rebuild_sum({A()}) == A());
  CHECK(rebuild_sum({A(), FlatObj::sum({B(), C()})}) ==
        FlatObj::sum({A(), B(), C()}));
  CHECK(rebuild_prod({}) == FlatObj::terminal());
  // A product with an empty-sum factor is not annihilated.
  FlatObj weird = rebuild_prod({A(), FlatObj::initial()});
  CHECK(weird.is_prod());
  CHECK(weird.items().size() == 2);
}

TEST_CASE("elem") {
  FlatList items{A(), B()};
  CHECK(elem(0, items) == A());
  CHECK(elem(1, items) == B());
}

TEST_CASE("round trips and congruence on random objects") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    ObjPtr o = random_obj(rng, 4);
    FlatObj f = flatten(o);
    CHECK(rebuild_sum(as_sum(f)) == f);
    CHECK(rebuild_prod(as_prod(f)) == f);
    // Idempotence through the canonical object reading.
    CHECK(flatten(obj_of_flat(f)) == f);
    CHECK((slen(f) == 0) == f.is_initial());
    CHECK((plen(f) == 0) == f.is_terminal());
  }
  // Associativity congruence.
  for (int i = 0; i < 200; ++i) {
    ObjPtr x = random_obj(rng, 3), y = random_obj(rng, 3),
           z = random_obj(rng, 3);
    CHECK(flatten(obj_sum(obj_sum(x, y), z)) ==
          flatten(obj_sum(x, obj_sum(y, z))));
    CHECK(flatten(obj_prod(obj_prod(x, y), z)) ==
          flatten(obj_prod(x, obj_prod(y, z))));
  }
}

TEST_CASE("diagnostic text form") {
  CHECK(FlatObj::sum({A(), B()}).str() == "+(A B)");
  CHECK(FlatObj::prod({A(), FlatObj::sum({B(), C()})}).str() == "*(A +(B C))");
  CHECK(FlatObj::initial().str() == "+()");
  CHECK(FlatObj::terminal().str() == "*()");
}
