#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "impg/forest.hpp"
#include "impg/objects.hpp"

namespace impg {

struct Span {
  int line = 0;
  int col = 0;
};

// ---------------------------------------------------------------------------
// Object expressions

struct ObjExpr;
using ObjPtr = std::shared_ptr<const ObjExpr>;

struct ObjExpr {
  enum class Kind { Basic, Terminal, Initial, Sum, Prod };
  Kind kind;
  std::string name;  // Basic
  ObjPtr left, right;
};

ObjPtr obj_basic(std::string name);
ObjPtr obj_terminal();
ObjPtr obj_initial();
ObjPtr obj_sum(ObjPtr l, ObjPtr r);
ObjPtr obj_prod(ObjPtr l, ObjPtr r);

bool obj_equal(const ObjPtr& a, const ObjPtr& b);

// Unique normal form of an object as a flat object.
FlatObj flatten(const ObjExpr& x);
inline FlatObj flatten(const ObjPtr& x) { return flatten(*x); }

// Canonical object reading of a flat object: right-nested sums/products,
// +() = O, *() = I.
ObjPtr obj_of_flat(const FlatObj& x);

// ---------------------------------------------------------------------------
// Arrow expressions

struct ArrowExpr;
using ArrowPtr = std::shared_ptr<const ArrowExpr>;

struct ArrowExpr {
  enum class Kind {
    Basic,
    Id,       // objs: 0 or 1
    Inj1,     // objs: 0 or 2
    Inj2,
    Proj1,
    Proj2,
    Bang,     // initial map `!`; objs: 0 or 1
    TermMap,  // terminal map `term`; objs: 0 or 1
    Dist,     // inverse distributivity; objs: 0 or 3
    Sum,      // f + g
    Prod,     // f * g
    Case,     // f | g
    Pair,     // f , g
    Seq,      // f ; g  ("f then g")
    Call,     // call[f] / call[X, U, Y, f]; body in `left`, objs 0 or 3
  };
  Kind kind;
  std::string name;          // Basic
  std::vector<ObjPtr> objs;  // annotations; empty means polymorphic
  ArrowPtr left, right;

  bool annotated() const { return !objs.empty(); }
};

ArrowPtr arr_basic(std::string name);
ArrowPtr arr_structural(ArrowExpr::Kind k, std::vector<ObjPtr> objs = {});
ArrowPtr arr_binary(ArrowExpr::Kind k, ArrowPtr l, ArrowPtr r);
ArrowPtr arr_call(ArrowPtr body, std::vector<ObjPtr> objs = {});

bool arrow_equal(const ArrowPtr& a, const ArrowPtr& b);

// ---------------------------------------------------------------------------
// Programs

struct Ref {
  std::string name;
  ObjPtr dom, cod;
  Span span;
};

struct Step {
  ArrowPtr arrow;
  ObjPtr cod;
  Span span;
};

struct Def {
  std::string name;
  ObjPtr dom;
  std::vector<Step> steps;  // nonempty
  Span span;
};

struct Program {
  std::vector<std::pair<std::string, Span>> objects;
  std::vector<Ref> refs;
  std::vector<Def> defs;
};

bool program_equal(const Program& a, const Program& b);

// ---------------------------------------------------------------------------
// Parsing

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": syntax error: " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

Program parse_program(const std::string& text);
Forest parse_data(const std::string& text);
ObjPtr parse_obj(const std::string& text);
ArrowPtr parse_arrow(const std::string& text);

// ---------------------------------------------------------------------------
// Printing (canonical forms; parse(print(x)) == x)

std::string print_obj(const ObjPtr& o);
std::string print_arrow(const ArrowPtr& a);
std::string print_program(const Program& p);
std::string print_data(const Forest& f);
std::string print_tree(const Tree& t);

}  // namespace impg
