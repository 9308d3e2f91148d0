#include "doctest.h"
#include "impg/syntax.hpp"

using namespace impg;

TEST_CASE("parse a minimal program") {
  Program p =
      parse_program("obj N; lib s : I + N --> N; def f : N --s o inj_2--> N .");
  REQUIRE(p.objects.size() == 1);
  CHECK(p.objects[0].first == "N");
  REQUIRE(p.refs.size() == 1);
  CHECK(p.refs[0].name == "s");
  REQUIRE(p.defs.size() == 1);
  const Def& d = p.defs[0];
  REQUIRE(d.steps.size() == 1);
  // s o inj_2 means "first inj_2, then s".
  const ArrowPtr& a = d.steps[0].arrow;
  REQUIRE(a->kind == ArrowExpr::Kind::Seq);
  CHECK(a->left->kind == ArrowExpr::Kind::Inj2);
  CHECK(a->left->objs.empty());
  CHECK(a->right->kind == ArrowExpr::Kind::Basic);
  CHECK(a->right->name == "s");
}

TEST_CASE("grammar requires all three sections") {
  CHECK_THROWS_AS(parse_program("obj ;"), ParseError);
  CHECK_NOTHROW(parse_program("obj ; lib ; def ."));
}

TEST_CASE("object precedence: product binds tighter than sum") {
  ObjPtr o = parse_obj("X*Y+Z");
  REQUIRE(o->kind == ObjExpr::Kind::Sum);
  CHECK(o->left->kind == ObjExpr::Kind::Prod);
  // Juxtaposition is product.
  ObjPtr j = parse_obj("X Y");
  REQUIRE(j->kind == ObjExpr::Kind::Prod);
  CHECK(obj_equal(j, parse_obj("X * Y")));
}

TEST_CASE("arrow precedence chain") {
  // f ; g * h + k  ==  f ; ((g * h) + k)
  ArrowPtr a = parse_arrow("f ; g * h + k");
  REQUIRE(a->kind == ArrowExpr::Kind::Seq);
  CHECK(a->left->name == "f");
  REQUIRE(a->right->kind == ArrowExpr::Kind::Sum);
  CHECK(a->right->left->kind == ArrowExpr::Kind::Prod);
  CHECK(a->right->right->name == "k");

  // Pairing is loosest and non-associative.
  ArrowPtr b = parse_arrow("f ; g | h");
  REQUIRE(b->kind == ArrowExpr::Kind::Case);
  CHECK(b->left->kind == ArrowExpr::Kind::Seq);
  CHECK_THROWS_AS(parse_arrow("f | g | h"), ParseError);
  CHECK_THROWS_AS(parse_arrow("f , g | h"), ParseError);
  CHECK_NOTHROW(parse_arrow("f | (g | h)"));

  // Sequencing is right associative.
  ArrowPtr c = parse_arrow("f ; g ; h");
  REQUIRE(c->kind == ArrowExpr::Kind::Seq);
  CHECK(c->left->name == "f");
  CHECK(c->right->kind == ArrowExpr::Kind::Seq);
}

TEST_CASE("structural arrows are fully annotated or fully polymorphic") {
  ArrowPtr a = parse_arrow("inj_1(A, B + C)");
  CHECK(a->objs.size() == 2);
  CHECK(parse_arrow("inj_1")->objs.empty());
  CHECK_THROWS_AS(parse_arrow("inj_1(A)"), ParseError);
  CHECK(parse_arrow("dist(A, B, C)")->objs.size() == 3);
  CHECK_THROWS_AS(parse_arrow("dist(A, B)"), ParseError);
  CHECK(parse_arrow("!(X)")->kind == ArrowExpr::Kind::Bang);
  CHECK(parse_arrow("term(X)")->objs.size() == 1);
}

TEST_CASE("call forms") {
  ArrowPtr a = parse_arrow("call[f]");
  CHECK(a->kind == ArrowExpr::Kind::Call);
  CHECK(a->objs.empty());
  ArrowPtr b = parse_arrow("call[N, N * N, N, f ; g]");
  CHECK(b->objs.size() == 3);
  CHECK(b->left->kind == ArrowExpr::Kind::Seq);
  // An arrow starting with '(' still parses in the short form.
  ArrowPtr c = parse_arrow("call[(f | g)]");
  CHECK(c->objs.empty());
  CHECK(c->left->kind == ArrowExpr::Kind::Case);
}

TEST_CASE("data literals") {
  CHECK(parse_data("<1, 5>") == Forest{Tree::node(1, {Tree::leaf(5)})});
  // Nested tags merge.
  CHECK(parse_data("<1, <2, 5>>") == Forest{Tree::node(3, {Tree::leaf(5)})});
  CHECK(parse_data("2 3") == Forest{Tree::leaf(2), Tree::leaf(3)});
  CHECK(parse_data("{7}") == Forest{Tree::leaf(7)});
  CHECK(parse_data("").empty());
  CHECK_THROWS_AS(parse_data("<-1, 5>"), ParseError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_program("obj N\nlib ; def .");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("comments") {
  CHECK_NOTHROW(parse_program("# hello\nobj ; lib ; def . # trailing"));
}

TEST_CASE("print round trips") {
  const char* text =
      "obj N, A;\n"
      "lib s : I + N --> N, p : N --> I + N;\n"
      "def one : N --term--> I --inj_1--> I + N --s--> N;\n"
      "    tw : A * A --(proj_2, proj_1)--> A * A;\n"
      "    k : N --call[N, N * N, N, (f, g) ; inj_1 | h]--> N\n"
      ".";
  Program p = parse_program(text);
  std::string printed = print_program(p);
  Program q = parse_program(printed);
  CHECK(program_equal(p, q));
  // Printing is idempotent.
  CHECK(print_program(q) == printed);
}

TEST_CASE("printer uses ; and explicit *") {
  ArrowPtr a = arr_binary(ArrowExpr::Kind::Seq, arr_basic("g"), arr_basic("f"));
  CHECK(print_arrow(a) == "g ; f");
  ObjPtr o = obj_prod(obj_basic("X"), obj_basic("Y"));
  CHECK(print_obj(o) == "X * Y");
}

TEST_CASE("data print round trip") {
  Forest f = parse_data("<3, <0, 2> 7> 5");
  CHECK(parse_data(print_data(f)) == f);
}

TEST_CASE("nested pairing still prints reparseably") {
  ArrowPtr inner = arr_binary(ArrowExpr::Kind::Case, arr_basic("g"),
                              arr_basic("h"));
  ArrowPtr outer = arr_binary(ArrowExpr::Kind::Case, arr_basic("f"), inner);
  std::string s = print_arrow(outer);
  CHECK(arrow_equal(parse_arrow(s), outer));
}

TEST_CASE("dart dash counts are not significant") {
  Program a = parse_program("obj N; lib s : I + N -> N; def f : N - s -> N .");
  CHECK(a.refs.size() == 1);
  Program b = parse_program(
      "obj N; lib s : I + N ----> N; def f : N ---s---> N .");
  CHECK(program_equal(
      parse_program("obj N; lib s : I + N --> N; def f : N --s--> N ."), b));
}

TEST_CASE("composition operators mix right-associatively") {
  // f ; g o h  ==  f ; (h ; g)
  ArrowPtr a = parse_arrow("f ; g o h");
  REQUIRE(a->kind == ArrowExpr::Kind::Seq);
  CHECK(a->left->name == "f");
  REQUIRE(a->right->kind == ArrowExpr::Kind::Seq);
  CHECK(a->right->left->name == "h");
  CHECK(a->right->right->name == "g");
}
