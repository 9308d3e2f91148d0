#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "impg/signature.hpp"
#include "impg/syntax.hpp"

namespace impg {

// A basic instruction of the forest machine. The Inj*/Proj*/Dist4 forms are
// produced by the compiler and removed by peephole optimization; optimized
// code contains only the remaining forms.
struct BasicOp {
  enum class Kind {
    Apply,     // apply a library arrow by name
    Nop,
    Init,      // initial map; has no execution rule
    Term,      // produce the empty forest
    Tree,      // Tree(n): wrap the forest in a node tagged n (normalizing)
    RightDel,  // drop the n rightmost trees
    LeftDel,   // drop the n leftmost trees
    Dist3,     // Dist3(q, q2, n): distributivity on the last tree
    Inj1,      // Inj1(p, q): pre-optimization injection
    Inj2,
    Proj1,     // Proj1(p, q): pre-optimization projection
    Proj2,
    Dist4,     // Dist4(p, q, q2, n): pre-optimization distributivity
  };
  Kind kind = Kind::Nop;
  std::string name;  // Apply
  std::uint64_t a = 0, b = 0, c = 0, d = 0;

  bool operator==(const BasicOp& o) const {
    return kind == o.kind && name == o.name && a == o.a && b == o.b &&
           c == o.c && d == o.d;
  }
};

struct Code;
using CodePtr = std::shared_ptr<const Code>;

// Compiled instruction tree.
struct Code {
  enum class Kind {
    Op,
    CompRef,  // run a previously compiled arrow
    Iter,     // Iter(body, m, n, k): iterate; m/n/k are the sum lengths of
              // the input, local and output state spaces
    Seq,      // a then b
    PairC,    // run a and b on the same input, concatenate
    PairIdx,  // pre-optimization pair carrying the codomain split (m, n)
    CaseC,    // CaseC(a, m, n, b): branch on the top tag; split (m, n)
  };
  Kind kind;
  BasicOp op;        // Op
  std::string name;  // CompRef
  CodePtr a, b;      // children; Iter body in a
  std::uint64_t m = 0, n = 0, k = 0;
};

CodePtr mk_op(BasicOp op);
CodePtr mk_apply(std::string name);
CodePtr mk_compref(std::string name);
CodePtr mk_seq(CodePtr a, CodePtr b);
CodePtr mk_pairc(CodePtr a, CodePtr b);
CodePtr mk_pairidx(CodePtr a, std::uint64_t p, std::uint64_t q, CodePtr b);
CodePtr mk_casec(CodePtr a, std::uint64_t p, std::uint64_t q, CodePtr b);
CodePtr mk_iter(CodePtr body, std::uint64_t m, std::uint64_t n,
                std::uint64_t p);

inline CodePtr mk_simple(BasicOp::Kind k, std::uint64_t a = 0,
                         std::uint64_t b = 0, std::uint64_t c = 0,
                         std::uint64_t d = 0) {
  return mk_op(BasicOp{k, {}, a, b, c, d});
}

bool code_equal(const CodePtr& a, const CodePtr& b);

// True iff the code contains none of the pre-optimization constructors.
bool is_optimized(const CodePtr& c);

// Parenthesized prefix form, e.g. `(SEQ (APPLY p) (CASE 1 1 (TREE 0) (NOP)))`.
std::string dump_code(const CodePtr& c);

struct CompiledDef {
  std::string name;
  CodePtr code;
  ArrowPtr elaborated;  // fully annotated source of the composed step chain
  ObjPtr dom, cod;
};

struct CompiledProgram {
  std::vector<CompiledDef> defs;
  Signature sig;  // library plus compiled arrows, newest first

  const CompiledDef* find(const std::string& name) const {
    for (const auto& d : defs)
      if (d.name == name) return &d;
    return nullptr;
  }
};

}  // namespace impg
