#include "doctest.h"
#include "impg/vm.hpp"

#include "impg/compiler.hpp"
#include "impg/stdlib_nat.hpp"

using namespace impg;

namespace {

CompiledProgram empty_prog() { return {}; }

Forest run(const CodePtr& c, Forest d, std::uint64_t budget = kDefaultBudget) {
  CompiledProgram p = empty_prog();
  return exec(c, std::move(d), p, budget);
}

}  // namespace

TEST_CASE("basic instructions") {
  CHECK(run(mk_simple(BasicOp::Kind::Nop), {Tree::leaf(7)}) ==
        Forest{Tree::leaf(7)});
  CHECK(run(mk_simple(BasicOp::Kind::Term), {Tree::leaf(7)}).empty());
  CHECK(run(mk_seq(mk_simple(BasicOp::Kind::Term),
                   mk_simple(BasicOp::Kind::Tree, 0)),
            {Tree::leaf(7)}) == Forest{Tree::node(0, {})});
  // Tagging normalizes.
  CHECK(run(mk_simple(BasicOp::Kind::Tree, 2),
            {Tree::node(1, {Tree::leaf(3)})}) ==
        Forest{Tree::node(3, {Tree::leaf(3)})});
  CHECK(run(mk_simple(BasicOp::Kind::RightDel, 1),
            {Tree::leaf(1), Tree::leaf(2)}) == Forest{Tree::leaf(1)});
  CHECK(run(mk_simple(BasicOp::Kind::LeftDel, 1),
            {Tree::leaf(1), Tree::leaf(2)}) == Forest{Tree::leaf(2)});
  CHECK_THROWS_AS(run(mk_simple(BasicOp::Kind::Init), {Tree::leaf(1)}),
                  VmError);
}

TEST_CASE("distributivity execution") {
  // One factor, two summands on either side.
  CHECK(run(mk_simple(BasicOp::Kind::Dist3, 1, 2, 1),
            {Tree::leaf(4), Tree::node(1, {Tree::leaf(7)})}) ==
        Forest{Tree::node(1, {Tree::leaf(4), Tree::node(0, {Tree::leaf(7)})})});
  // q=1 splices on tag zero.
  CHECK(run(mk_simple(BasicOp::Kind::Dist3, 1, 2, 1),
            {Tree::leaf(4), Tree::node(0, {Tree::leaf(7)})}) ==
        Forest{Tree::node(0, {Tree::leaf(4), Tree::leaf(7)})});
  // q>1 keeps the inner tag on the first group.
  CHECK(run(mk_simple(BasicOp::Kind::Dist3, 2, 2, 1),
            {Tree::leaf(4), Tree::node(1, {Tree::leaf(7)})}) ==
        Forest{Tree::node(0, {Tree::leaf(4), Tree::node(1, {Tree::leaf(7)})})});
  // q2=1 splices the second group.
  CHECK(run(mk_simple(BasicOp::Kind::Dist3, 2, 1, 1),
            {Tree::leaf(4), Tree::node(2, {Tree::leaf(7)})}) ==
        Forest{Tree::node(1, {Tree::leaf(4), Tree::leaf(7)})});
}

TEST_CASE("case execution") {
  CodePtr tag = mk_simple(BasicOp::Kind::Tree, 9);
  CodePtr keep = mk_simple(BasicOp::Kind::Nop);
  // p != 1: the scrutinee flows through unchanged.
  CHECK(run(mk_casec(keep, 2, 1, tag), {Tree::node(1, {Tree::leaf(5)})}) ==
        Forest{Tree::node(1, {Tree::leaf(5)})});
  // q != 1: the tag is rebased.
  CHECK(run(mk_casec(tag, 1, 2, keep), {Tree::node(2, {Tree::leaf(5)})}) ==
        Forest{Tree::node(1, {Tree::leaf(5)})});
  // p == 1 unwraps.
  CHECK(run(mk_casec(keep, 1, 1, tag), {Tree::node(0, {Tree::leaf(5)})}) ==
        Forest{Tree::leaf(5)});
  // q == 1 unwraps at exactly tag p.
  CHECK(run(mk_casec(tag, 1, 1, keep), {Tree::node(1, {Tree::leaf(5)})}) ==
        Forest{Tree::leaf(5)});
  CHECK_THROWS_AS(run(mk_casec(keep, 1, 1, keep), {Tree::leaf(5)}), VmError);
}

TEST_CASE("iteration: countdown loop") {
  // step : N+N -> N+N sends <t, k> to <0, k-1> when k > 0 and to <1, 0>
  // otherwise; iterating from 3 ends at 0.
  CodePtr zero_code = mk_seq(mk_simple(BasicOp::Kind::Tree, 0), mk_apply("s"));
  CodePtr step = mk_seq(
      mk_casec(mk_simple(BasicOp::Kind::Nop), 1, 1,
               mk_simple(BasicOp::Kind::Nop)),
      mk_seq(mk_apply("p"),
             mk_casec(mk_seq(zero_code, mk_simple(BasicOp::Kind::Tree, 1)), 1,
                      1, mk_simple(BasicOp::Kind::Tree, 0))));
  CodePtr loop = mk_iter(step, 1, 1, 1);
  CHECK(run(loop, {Tree::leaf(3)}) == Forest{Tree::leaf(0)});
  // A tight budget is detected.
  CHECK_THROWS_AS(run(loop, {Tree::leaf(3)}, 2), BudgetExhausted);
  CHECK_THROWS_AS(run(loop, {Tree::leaf(3)}, 0), BudgetExhausted);
}

TEST_CASE("code_of and comp refs") {
  Program p = parse_program(
      "obj N; lib s : I + N --> N, p : N --> I + N;\n"
      "def f : N --p--> I + N --s--> N; g : N --f--> N .");
  CompiledProgram cp = optimize(compile_program(p));
  CHECK(code_equal(code_of("f", cp), cp.defs[0].code));
  CHECK_THROWS_AS(code_of("zzz", cp), VmError);
  CHECK(exec(mk_compref("g"), {Tree::leaf(4)}, cp) == Forest{Tree::leaf(4)});
}

TEST_CASE("run_arrow") {
  Program p = parse_program(
      "obj N; lib s : I + N --> N, p : N --> I + N;\n"
      "def f : N --p--> I + N --s--> N .");
  RunResult r = run_arrow("f", {Tree::leaf(9)}, p);
  REQUIRE(r.result);
  CHECK(*r.result == Forest{Tree::leaf(9)});

  // An ill-typed program yields diagnostics, not a crash.
  Program bad = parse_program(
      "obj N; lib s : I + N --> N; def f : N --s--> N .");
  RunResult rb = run_arrow("f", {Tree::leaf(9)}, bad);
  CHECK_FALSE(rb.result);
  REQUIRE(rb.diags.size() == 1);
  CHECK(rb.diags[0].render() == "arrow s is not from N to N");
}

TEST_CASE("pre-optimization code executes like its optimized form") {
  // INJ/PROJ/DIST4/PAIRIDX carry their degenerate cases at run time.
  Forest d{Tree::leaf(1), Tree::leaf(2)};
  CodePtr pre = mk_pairidx(mk_simple(BasicOp::Kind::Proj1, 1, 1), 1, 1,
                           mk_simple(BasicOp::Kind::Proj2, 1, 1));
  CompiledProgram ep = empty_prog();
  CHECK(exec(pre, d, ep) == exec(peephole(pre), d, ep));
  CHECK(exec(mk_simple(BasicOp::Kind::Inj2, 3, 1), {Tree::leaf(5)}, ep) ==
        Forest{Tree::node(3, {Tree::leaf(5)})});
  CHECK(exec(mk_simple(BasicOp::Kind::Inj1, 2, 0), d, ep) == d);
}
