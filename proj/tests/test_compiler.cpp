#include "doctest.h"
#include "impg/compiler.hpp"
#include "impg/refeval.hpp"
#include "impg/stdlib_nat.hpp"

#include <random>

using namespace impg;

namespace {

FlatObj A() { return FlatObj::basic("A"); }
FlatObj B() { return FlatObj::basic("B"); }

FlatObj fl(const char* s) { return flatten(parse_obj(s)); }

std::optional<Compilation> comp(const char* arrow, const char* dom,
                                const char* cod, const Signature& sig) {
  Compiler c(sig);
  return c.compile(parse_arrow(arrow), fl(dom), fl(cod));
}

std::optional<Compilation> comp(const char* arrow, const char* dom,
                                const char* cod) {
  Signature sig;
  return comp(arrow, dom, cod, sig);
}

}  // namespace

TEST_CASE("polymorphic injection instantiates against the codomain") {
  auto r = comp("inj_1", "A", "A + B");
  REQUIRE(r);
  CHECK(code_equal(r->code, mk_simple(BasicOp::Kind::Inj1, 1, 1)));
  CHECK(code_equal(peephole(r->code), mk_simple(BasicOp::Kind::Tree, 0)));
  // The chosen instantiation is recorded.
  CHECK(print_arrow(r->elaborated) == "inj_1(A, B)");
}

TEST_CASE("identity guards against trivial instantiation") {
  CHECK_FALSE(comp("id", "O", "O"));
  CHECK_FALSE(comp("id", "I", "I"));
  CHECK(comp("id", "A", "A"));
  CHECK_FALSE(comp("id", "A", "B"));
  // Annotated identities are allowed anywhere.
  CHECK(comp("id(I)", "I", "I"));
  CHECK(comp("id(O)", "O", "O"));
}

TEST_CASE("composition through a computable end") {
  auto r = comp("term ; inj_1", "A", "I + I");
  REQUIRE(r);
  CHECK(code_equal(peephole(r->code),
                   mk_seq(mk_simple(BasicOp::Kind::Term),
                          mk_simple(BasicOp::Kind::Tree, 0))));
  CHECK(print_arrow(r->elaborated) == "term(A) ; inj_1(I, I)");

  // Neither end computable: the artificial example is rejected.
  CHECK_FALSE(comp("inj_1 o proj_1", "X * Z", "X + Y"));
}

TEST_CASE("twist is ambiguous, with two distinct optimized codes") {
  Signature sig;
  auto rep = check_ambiguous(parse_arrow("(inj_2 | inj_1)"), fl("A + A + A"),
                             fl("A + A + A"), sig);
  CHECK(rep.ambiguous);
  CHECK(rep.distinct_codes.size() == 2);
  // First-solution mode stays deterministic.
  auto r1 = comp("(inj_2 | inj_1)", "A + A + A", "A + A + A");
  auto r2 = comp("(inj_2 | inj_1)", "A + A + A", "A + A + A");
  REQUIRE(r1);
  REQUIRE(r2);
  CHECK(code_equal(r1->code, r2->code));
}

TEST_CASE("annotated twist is unambiguous") {
  Signature sig;
  auto rep = check_ambiguous(
      parse_arrow("(inj_2(A + A, A) | inj_1(A + A, A))"), fl("A + (A + A)"),
      fl("(A + A) + A"), sig);
  CHECK_FALSE(rep.ambiguous);
  CHECK(rep.distinct_codes.size() == 1);
}

TEST_CASE("distributivity") {
  // A * (B + C) -> A * B + A * C
  auto r = comp("dist", "A * (B + C)", "A * B + A * C");
  REQUIRE(r);
  CHECK(code_equal(r->code, mk_simple(BasicOp::Kind::Dist4, 1, 1, 1, 1)));
  CHECK(code_equal(peephole(r->code), mk_simple(BasicOp::Kind::Dist3, 1, 1, 1)));
  CHECK(print_arrow(r->elaborated) == "dist(A, B, C)");

  auto r2 = comp("dist(A, B, C)", "A * (B + C)", "A * B + A * C");
  REQUIRE(r2);
  CHECK(code_equal(r2->code, r->code));

  // Degenerate dists trivialize through the peephole constants.
  auto r3 = comp("dist(I, B, C)", "B + C", "B + C");
  REQUIRE(r3);
  CHECK(code_equal(peephole(r3->code), mk_simple(BasicOp::Kind::Nop)));
  auto r4 = comp("dist(A, O, C)", "A * C", "A * O + A * C");
  REQUIRE(r4);
  CHECK(code_equal(peephole(r4->code), mk_simple(BasicOp::Kind::Tree, 1)));
}

TEST_CASE("peephole rules") {
  CodePtr c = mk_apply("f");
  CHECK(code_equal(peephole(mk_seq(mk_simple(BasicOp::Kind::Nop), c)), c));
  CHECK(code_equal(peephole(mk_seq(c, mk_simple(BasicOp::Kind::Nop))), c));
  CHECK(code_equal(peephole(mk_simple(BasicOp::Kind::Inj1, 2, 0)),
                   mk_simple(BasicOp::Kind::Nop)));
  CHECK(code_equal(peephole(mk_simple(BasicOp::Kind::Inj1, 0, 2)),
                   mk_simple(BasicOp::Kind::Init)));
  CHECK(code_equal(peephole(mk_simple(BasicOp::Kind::Proj2, 3, 2)),
                   mk_simple(BasicOp::Kind::LeftDel, 3)));
  CHECK(code_equal(peephole(mk_iter(c, 2, 0, 1)), c));
  CHECK(code_equal(peephole(mk_iter(c, 0, 3, 1)),
                   mk_simple(BasicOp::Kind::Init)));
  CHECK(code_equal(peephole(mk_simple(BasicOp::Kind::Dist4, 1, 2, 2, 1)),
                   mk_simple(BasicOp::Kind::Dist3, 2, 2, 1)));
  CHECK(code_equal(peephole(mk_seq(mk_simple(BasicOp::Kind::Init), c)),
                   mk_simple(BasicOp::Kind::Init)));
  CHECK(code_equal(peephole(mk_seq(c, mk_simple(BasicOp::Kind::Term))),
                   mk_simple(BasicOp::Kind::Term)));
  CHECK(code_equal(peephole(mk_casec(c, 0, 2, mk_apply("g"))), mk_apply("g")));
  CHECK(code_equal(peephole(mk_pairidx(c, 2, 0, mk_apply("g"))), c));
  CHECK(code_equal(peephole(mk_pairidx(c, 1, 1, mk_apply("g"))),
                   mk_pairc(c, mk_apply("g"))));
}

TEST_CASE("sums and products of arrows") {
  Signature sig = nat_signature();
  // p + p : N + N -> (I + N) + (I + N)
  auto r = comp("p + p", "N + N", "(I + N) + (I + N)", sig);
  REQUIRE(r);
  CHECK(is_optimized(peephole(r->code)));
  // s * s : (I+N) * (I+N) -> N * N
  auto r2 = comp("s * s", "(I + N) * (I + N)", "N * N", sig);
  REQUIRE(r2);
  CHECK(is_optimized(peephole(r2->code)));
}

TEST_CASE("call compilation") {
  Signature sig = nat_signature();
  // Annotated call with empty local space collapses to the body.
  auto r = comp("call[N, O, N, (id(N) | !(N)) ; inj_2(O, N)]", "N", "N", sig);
  REQUIRE(r);
  CHECK(code_equal(peephole(r->code), mk_simple(BasicOp::Kind::Nop)));

  // The output space must be nonempty.
  CHECK_FALSE(comp("call[N, N, O, inj_1]", "N", "O", sig));
}

TEST_CASE("whole programs") {
  Program p = parse_program(
      "obj N;\n"
      "lib s : I + N --> N, p : N --> I + N;\n"
      "def f : N --p--> I + N --s--> N;\n"
      "    g : N --f--> N .");
  CompiledProgram cp = compile_program(p);
  REQUIRE(cp.defs.size() == 2);
  CHECK(code_equal(cp.defs[0].code, mk_seq(mk_apply("p"), mk_apply("s"))));
  CHECK(code_equal(cp.defs[1].code, mk_compref("f")));
  // Earlier defs enter the signature as compiled arrows.
  CHECK(cp.sig.lookup("f")->kind == ArrowKind::Defined);

  Program empty = parse_program("obj ; lib ; def .");
  CHECK(compile_program(empty).defs.empty());

  Program bad = parse_program("obj A; lib ; def h : A --term ; id--> A .");
  CHECK_THROWS_AS(compile_program(bad), CompileError);
}

TEST_CASE("elaborate is stable") {
  Signature sig;
  ArrowPtr e = elaborate(parse_arrow("inj_1"), A(), rebuild_sum({A(), B()}), sig);
  CHECK(print_arrow(e) == "inj_1(A, B)");
  // Elaborating an already annotated arrow is the identity.
  ArrowPtr e2 = elaborate(e, A(), rebuild_sum({A(), B()}), sig);
  CHECK(arrow_equal(e, e2));
  // Compiling the elaborated arrow reproduces the optimized code.
  Compiler c1(sig), c2(sig);
  auto orig = c1.compile(parse_arrow("inj_1"), A(), rebuild_sum({A(), B()}));
  auto elab = c2.compile(e, A(), rebuild_sum({A(), B()}));
  REQUIRE(orig);
  REQUIRE(elab);
  CHECK(code_equal(peephole(orig->code), peephole(elab->code)));
}

TEST_CASE("code dump format") {
  CodePtr c = mk_seq(mk_apply("p"),
                     mk_casec(mk_simple(BasicOp::Kind::Tree, 0), 1, 1,
                              mk_simple(BasicOp::Kind::Nop)));
  CHECK(dump_code(c) == "(SEQ (APPLY p) (CASE 1 1 (TREE 0) (NOP)))");
  CHECK(dump_code(mk_iter(mk_compref("f"), 1, 2, 3)) ==
        "(ITER 1 2 3 (COMP f))");
  CHECK(dump_code(mk_pairidx(mk_simple(BasicOp::Kind::Proj1, 1, 1), 1, 1,
                             mk_simple(BasicOp::Kind::Dist4, 1, 1, 1, 1))) ==
        "(PAIRIDX 1 1 (PROJ1 1 1) (DIST4 1 1 1 1))");
}

TEST_CASE("composable chains with alternating known ends") {
  Signature sig = nat_signature();
  // cod known on the left of each composition.
  CHECK(comp("term ; inj_1 ; s", "N * N", "N", sig));
  // dom known on the right.
  CHECK(comp("inj_2 ; s", "N", "N", sig));
}

TEST_CASE("random corpus properties: inference soundness, elaboration "
          "stability, peephole idempotence") {
  Signature sig = nat_signature();
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 300) {
    ObjPtr t = gen_type(rng, 3);
    if (!inhabited(t)) continue;
    GeneratedArrow g = gen_arrow(t, 3, rng, sig);
    FlatObj fd = flatten(t), fc = flatten(g.cod);
    Compiler comp(sig);
    auto r = comp.compile(g.arrow, fd, fc);
    REQUIRE(r);
    // Best-effort inference is sound on compilable arrows.
    MaybeFlat d = dom(g.arrow, sig), c = cod(g.arrow, sig);
    if (d) CHECK(*d == fd);
    if (c) CHECK(*c == fc);
    // Compiling the recorded instantiation reproduces the optimized code.
    Compiler comp2(sig);
    auto r2 = comp2.compile(r->elaborated, fd, fc);
    REQUIRE(r2);
    CHECK(code_equal(peephole(r->code), peephole(r2->code)));
    // The optimizer is a projection.
    CodePtr once = peephole(r->code);
    CHECK(code_equal(peephole(once), once));
    ++done;
  }
}

TEST_CASE("chains with an alternating computable end always compile") {
  // Pieces whose ends are known on at least one side of every joint.
  Signature sig = nat_signature();
  std::mt19937_64 rng(177);
  const char* pieces[] = {
      "p",                        // N -> I + N, both ends known
      "s",                        // I + N -> N
      "(p, p)",                   // N -> (I+N) * (I+N)
      "s * s",                    // (I+N) * (I+N) -> N * N
      "plus",                     // N * N -> N
      "inj_2 ; s",                // N -> N via an unknown-dom piece
  };
  (void)pieces;
  for (int i = 0; i < 50; ++i) {
    // Random walk: N -> ... -> N alternating known-cod steps with a
    // polymorphic middle.
    std::string chain = "p ; s";
    int len = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < len; ++k) chain += " ; (p ; s)";
    if (rng() % 2) chain += " ; inj_2 ; s";
    Compiler comp(sig);
    auto r = comp.compile(parse_arrow(chain), FlatObj::basic("N"),
                          FlatObj::basic("N"));
    CHECK(r);
  }
}
