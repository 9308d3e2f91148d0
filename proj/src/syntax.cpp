#include "impg/syntax.hpp"

#include <cctype>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

namespace impg {

// ---------------------------------------------------------------------------
// AST constructors and equality

ObjPtr obj_basic(std::string name) {
  auto o = std::make_shared<ObjExpr>();
  o->kind = ObjExpr::Kind::Basic;
  o->name = std::move(name);
  return o;
}

ObjPtr obj_terminal() {
  static const ObjPtr t = [] {
    auto o = std::make_shared<ObjExpr>();
    o->kind = ObjExpr::Kind::Terminal;
    return o;
  }();
  return t;
}

ObjPtr obj_initial() {
  static const ObjPtr t = [] {
    auto o = std::make_shared<ObjExpr>();
    o->kind = ObjExpr::Kind::Initial;
    return o;
  }();
  return t;
}

static ObjPtr obj_binary(ObjExpr::Kind k, ObjPtr l, ObjPtr r) {
  auto o = std::make_shared<ObjExpr>();
  o->kind = k;
  o->left = std::move(l);
  o->right = std::move(r);
  return o;
}

ObjPtr obj_sum(ObjPtr l, ObjPtr r) {
  return obj_binary(ObjExpr::Kind::Sum, std::move(l), std::move(r));
}

ObjPtr obj_prod(ObjPtr l, ObjPtr r) {
  return obj_binary(ObjExpr::Kind::Prod, std::move(l), std::move(r));
}

bool obj_equal(const ObjPtr& a, const ObjPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ObjExpr::Kind::Basic:
      return a->name == b->name;
    case ObjExpr::Kind::Terminal:
    case ObjExpr::Kind::Initial:
      return true;
    default:
      return obj_equal(a->left, b->left) && obj_equal(a->right, b->right);
  }
}

FlatObj flatten(const ObjExpr& x) {
  switch (x.kind) {
    case ObjExpr::Kind::Basic:
      return FlatObj::basic(x.name);
    case ObjExpr::Kind::Terminal:
      return FlatObj::terminal();
    case ObjExpr::Kind::Initial:
      return FlatObj::initial();
    case ObjExpr::Kind::Sum:
      return rebuild_sum({flatten(*x.left), flatten(*x.right)});
    case ObjExpr::Kind::Prod:
      return rebuild_prod({flatten(*x.left), flatten(*x.right)});
  }
  throw std::logic_error("unreachable");
}

ObjPtr obj_of_flat(const FlatObj& x) {
  if (x.is_basic()) return obj_basic(x.name());
  const auto& items = x.items();
  const bool sum = x.is_sum();
  if (items.empty()) return sum ? obj_initial() : obj_terminal();
  ObjPtr acc = obj_of_flat(items.back());
  for (std::size_t i = items.size() - 1; i-- > 0;) {
    ObjPtr l = obj_of_flat(items[i]);
    acc = sum ? obj_sum(std::move(l), std::move(acc))
              : obj_prod(std::move(l), std::move(acc));
  }
  return acc;
}

ArrowPtr arr_basic(std::string name) {
  auto a = std::make_shared<ArrowExpr>();
  a->kind = ArrowExpr::Kind::Basic;
  a->name = std::move(name);
  return a;
}

ArrowPtr arr_structural(ArrowExpr::Kind k, std::vector<ObjPtr> objs) {
  auto a = std::make_shared<ArrowExpr>();
  a->kind = k;
  a->objs = std::move(objs);
  return a;
}

ArrowPtr arr_binary(ArrowExpr::Kind k, ArrowPtr l, ArrowPtr r) {
  auto a = std::make_shared<ArrowExpr>();
  a->kind = k;
  a->left = std::move(l);
  a->right = std::move(r);
  return a;
}

ArrowPtr arr_call(ArrowPtr body, std::vector<ObjPtr> objs) {
  auto a = std::make_shared<ArrowExpr>();
  a->kind = ArrowExpr::Kind::Call;
  a->left = std::move(body);
  a->objs = std::move(objs);
  return a;
}

bool arrow_equal(const ArrowPtr& a, const ArrowPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->objs.size() != b->objs.size()) return false;
  for (std::size_t i = 0; i < a->objs.size(); ++i)
    if (!obj_equal(a->objs[i], b->objs[i])) return false;
  return arrow_equal(a->left, b->left) && arrow_equal(a->right, b->right);
}

bool program_equal(const Program& a, const Program& b) {
  if (a.objects.size() != b.objects.size() || a.refs.size() != b.refs.size() ||
      a.defs.size() != b.defs.size())
    return false;
  for (std::size_t i = 0; i < a.objects.size(); ++i)
    if (a.objects[i].first != b.objects[i].first) return false;
  for (std::size_t i = 0; i < a.refs.size(); ++i) {
    const Ref &x = a.refs[i], &y = b.refs[i];
    if (x.name != y.name || !obj_equal(x.dom, y.dom) ||
        !obj_equal(x.cod, y.cod))
      return false;
  }
  for (std::size_t i = 0; i < a.defs.size(); ++i) {
    const Def &x = a.defs[i], &y = b.defs[i];
    if (x.name != y.name || !obj_equal(x.dom, y.dom) ||
        x.steps.size() != y.steps.size())
      return false;
    for (std::size_t j = 0; j < x.steps.size(); ++j)
      if (!arrow_equal(x.steps[j].arrow, y.steps[j].arrow) ||
          !obj_equal(x.steps[j].cod, y.steps[j].cod))
        return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok {
  LIdent,
  UIdent,
  Int,
  KwObj,
  KwLib,
  KwDef,
  KwCall,
  KwId,
  KwInj1,
  KwInj2,
  KwProj1,
  KwProj2,
  KwTerm,
  KwDist,
  KwI,
  KwO,
  OpO,  // composition `o`
  Bang,
  Plus,
  Star,
  Semi,
  Comma,
  Bar,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Colon,
  Dot,
  Lt,
  Gt,
  DartStart,  // run of dashes
  DartEnd,    // run of dashes followed by `>`
  Eof,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::LIdent: return "arrow name";
    case Tok::UIdent: return "object name";
    case Tok::Int: return "integer";
    case Tok::KwObj: return "'obj'";
    case Tok::KwLib: return "'lib'";
    case Tok::KwDef: return "'def'";
    case Tok::KwCall: return "'call'";
    case Tok::KwId: return "'id'";
    case Tok::KwInj1: return "'inj_1'";
    case Tok::KwInj2: return "'inj_2'";
    case Tok::KwProj1: return "'proj_1'";
    case Tok::KwProj2: return "'proj_2'";
    case Tok::KwTerm: return "'term'";
    case Tok::KwDist: return "'dist'";
    case Tok::KwI: return "'I'";
    case Tok::KwO: return "'O'";
    case Tok::OpO: return "'o'";
    case Tok::Bang: return "'!'";
    case Tok::Plus: return "'+'";
    case Tok::Star: return "'*'";
    case Tok::Semi: return "';'";
    case Tok::Comma: return "','";
    case Tok::Bar: return "'|'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Lt: return "'<'";
    case Tok::Gt: return "'>'";
    case Tok::DartStart: return "dart start '--'";
    case Tok::DartEnd: return "dart end '-->'";
    case Tok::Eof: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' ||
         c == '\'';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string s, int l, int c) {
    out.push_back({k, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    int l = line, co = col;
    auto advance = [&](std::size_t n) {
      for (std::size_t j = 0; j < n; ++j) {
        if (text[i + j] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    if (c == '#') {
      std::size_t j = i;
      while (j < text.size() && text[j] != '\n') ++j;
      advance(j - i);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-') {
      std::size_t j = i;
      while (j < text.size() && text[j] == '-') ++j;
      if (j < text.size() && text[j] == '>') {
        advance(j - i + 1);
        push(Tok::DartEnd, "->", l, co);
      } else {
        advance(j - i);
        push(Tok::DartStart, "--", l, co);
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      push(Tok::Int, text.substr(i, j - i), l, co);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string s = text.substr(i, j - i);
      advance(j - i);
      Tok k;
      if (s == "obj") k = Tok::KwObj;
      else if (s == "lib") k = Tok::KwLib;
      else if (s == "def") k = Tok::KwDef;
      else if (s == "call") k = Tok::KwCall;
      else if (s == "id") k = Tok::KwId;
      else if (s == "inj_1") k = Tok::KwInj1;
      else if (s == "inj_2") k = Tok::KwInj2;
      else if (s == "proj_1") k = Tok::KwProj1;
      else if (s == "proj_2") k = Tok::KwProj2;
      else if (s == "term") k = Tok::KwTerm;
      else if (s == "dist") k = Tok::KwDist;
      else if (s == "I") k = Tok::KwI;
      else if (s == "O") k = Tok::KwO;
      else if (s == "o") k = Tok::OpO;
      else if (std::isupper(static_cast<unsigned char>(s[0]))) k = Tok::UIdent;
      else k = Tok::LIdent;
      push(k, std::move(s), l, co);
      continue;
    }
    Tok k;
    switch (c) {
      case '!': k = Tok::Bang; break;
      case '+': k = Tok::Plus; break;
      case '*': k = Tok::Star; break;
      case ';': k = Tok::Semi; break;
      case ',': k = Tok::Comma; break;
      case '|': k = Tok::Bar; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '[': k = Tok::LBracket; break;
      case ']': k = Tok::RBracket; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ':': k = Tok::Colon; break;
      case '.': k = Tok::Dot; break;
      case '<': k = Tok::Lt; break;
      case '>': k = Tok::Gt; break;
      default:
        throw ParseError(l, co, std::string("unexpected character '") + c + "'");
    }
    push(k, std::string(1, c), l, co);
    advance(1);
  }
  out.push_back({Tok::Eof, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Program program() {
    Program p;
    expect(Tok::KwObj, "a program starts with 'obj'");
    if (!at(Tok::Semi)) {
      for (;;) {
        Token t = expect(Tok::UIdent, "object name");
        p.objects.emplace_back(t.text, Span{t.line, t.col});
        if (!eat(Tok::Comma)) break;
      }
    }
    expect(Tok::Semi, "';' after the object list");
    expect(Tok::KwLib, "'lib' section");
    if (!at(Tok::Semi)) {
      for (;;) {
        p.refs.push_back(ref());
        if (!eat(Tok::Comma)) break;
      }
    }
    expect(Tok::Semi, "';' after the lib list");
    expect(Tok::KwDef, "'def' section");
    if (!at(Tok::Dot)) {
      for (;;) {
        p.defs.push_back(def());
        if (!eat(Tok::Semi)) break;
      }
    }
    expect(Tok::Dot, "'.' at the end of the program");
    expect(Tok::Eof, "end of input after '.'");
    return p;
  }

  Forest data() {
    Forest f = data_body();
    expect(Tok::Eof, "end of data literal");
    return f;
  }

  ObjPtr obj_entry() {
    ObjPtr o = obj();
    expect(Tok::Eof, "end of object expression");
    return o;
  }

  ArrowPtr arrow_entry() {
    ArrowPtr a = arrow();
    expect(Tok::Eof, "end of arrow expression");
    return a;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool eat(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const std::string& what) {
    if (!at(k))
      throw ParseError(cur().line, cur().col,
                       "expected " + what + ", found " + tok_name(cur().kind));
    return toks_[pos_++];
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(cur().line, cur().col, msg);
  }

  Ref ref() {
    Token t = expect(Tok::LIdent, "arrow name");
    expect(Tok::Colon, "':' in an arrow declaration");
    ObjPtr dom = obj();
    expect(Tok::DartEnd, "'-->' in an arrow declaration");
    ObjPtr cod = obj();
    return Ref{t.text, std::move(dom), std::move(cod), {t.line, t.col}};
  }

  Def def() {
    Token t = expect(Tok::LIdent, "arrow name");
    expect(Tok::Colon, "':' in an arrow definition");
    ObjPtr dom = obj();
    Def d;
    d.name = t.text;
    d.dom = std::move(dom);
    d.span = {t.line, t.col};
    if (!at(Tok::DartStart))
      fail("an arrow definition needs at least one step '--arrow-->'");
    while (at(Tok::DartStart)) {
      Token s = cur();
      ++pos_;
      ArrowPtr a = arrow();
      expect(Tok::DartEnd, "'-->' closing the step");
      ObjPtr cod = obj();
      d.steps.push_back(Step{std::move(a), std::move(cod), {s.line, s.col}});
    }
    return d;
  }

  // Objects. `*` and juxtaposition bind tighter than `+`; both left
  // associative.
  ObjPtr obj() {
    ObjPtr l = obj_prod_level();
    while (eat(Tok::Plus)) l = obj_sum(std::move(l), obj_prod_level());
    return l;
  }

  bool at_obj_atom() const {
    return at(Tok::UIdent) || at(Tok::KwI) || at(Tok::KwO) || at(Tok::LParen);
  }

  ObjPtr obj_prod_level() {
    ObjPtr l = obj_atom();
    for (;;) {
      if (eat(Tok::Star)) {
        l = obj_prod(std::move(l), obj_atom());
      } else if (at_obj_atom()) {
        l = obj_prod(std::move(l), obj_atom());
      } else {
        return l;
      }
    }
  }

  ObjPtr obj_atom() {
    if (at(Tok::UIdent)) {
      Token t = toks_[pos_++];
      return obj_basic(t.text);
    }
    if (eat(Tok::KwI)) return obj_terminal();
    if (eat(Tok::KwO)) return obj_initial();
    if (eat(Tok::LParen)) {
      ObjPtr o = obj();
      expect(Tok::RParen, "')'");
      return o;
    }
    fail("expected an object");
  }

  // Arrows, loosest to tightest: pairing (`|`, `,`; non-associative), then
  // `;`/`o` (right associative), then `+`, then `*`.
  ArrowPtr arrow() {
    ArrowPtr l = arrow_seq();
    if (eat(Tok::Bar)) {
      ArrowPtr r = arrow_seq();
      if (at(Tok::Bar) || at(Tok::Comma))
        fail("'|' and ',' are non-associative; parenthesize nested pairings");
      return arr_binary(ArrowExpr::Kind::Case, std::move(l), std::move(r));
    }
    if (eat(Tok::Comma)) {
      ArrowPtr r = arrow_seq();
      if (at(Tok::Bar) || at(Tok::Comma))
        fail("'|' and ',' are non-associative; parenthesize nested pairings");
      return arr_binary(ArrowExpr::Kind::Pair, std::move(l), std::move(r));
    }
    return l;
  }

  ArrowPtr arrow_seq() {
    ArrowPtr l = arrow_sum();
    if (eat(Tok::Semi))
      return arr_binary(ArrowExpr::Kind::Seq, std::move(l), arrow_seq());
    if (eat(Tok::OpO)) {
      // g o f means "first f, then g".
      ArrowPtr r = arrow_seq();
      return arr_binary(ArrowExpr::Kind::Seq, std::move(r), std::move(l));
    }
    return l;
  }

  ArrowPtr arrow_sum() {
    ArrowPtr l = arrow_prod();
    if (eat(Tok::Plus))
      return arr_binary(ArrowExpr::Kind::Sum, std::move(l), arrow_sum());
    return l;
  }

  ArrowPtr arrow_prod() {
    ArrowPtr l = arrow_atom();
    if (eat(Tok::Star))
      return arr_binary(ArrowExpr::Kind::Prod, std::move(l), arrow_prod());
    return l;
  }

  std::vector<ObjPtr> obj_args(std::size_t arity) {
    std::vector<ObjPtr> objs;
    if (!eat(Tok::LParen)) return objs;
    for (std::size_t k = 0; k < arity; ++k) {
      if (k) expect(Tok::Comma, "','");
      objs.push_back(obj());
    }
    expect(Tok::RParen, "')'");
    return objs;
  }

  ArrowPtr arrow_atom() {
    if (at(Tok::LIdent)) {
      Token t = toks_[pos_++];
      return arr_basic(t.text);
    }
    if (eat(Tok::KwId))
      return arr_structural(ArrowExpr::Kind::Id, obj_args(1));
    if (eat(Tok::KwInj1))
      return arr_structural(ArrowExpr::Kind::Inj1, obj_args(2));
    if (eat(Tok::KwInj2))
      return arr_structural(ArrowExpr::Kind::Inj2, obj_args(2));
    if (eat(Tok::KwProj1))
      return arr_structural(ArrowExpr::Kind::Proj1, obj_args(2));
    if (eat(Tok::KwProj2))
      return arr_structural(ArrowExpr::Kind::Proj2, obj_args(2));
    if (eat(Tok::Bang))
      return arr_structural(ArrowExpr::Kind::Bang, obj_args(1));
    if (eat(Tok::KwTerm))
      return arr_structural(ArrowExpr::Kind::TermMap, obj_args(1));
    if (eat(Tok::KwDist))
      return arr_structural(ArrowExpr::Kind::Dist, obj_args(3));
    if (eat(Tok::KwCall)) {
      expect(Tok::LBracket, "'[' after 'call'");
      // Annotated form: call[X, U, Y, f]. Objects and arrows overlap only on
      // '(' so try the annotated form first and rewind on failure.
      std::size_t save = pos_;
      if (at_obj_atom()) {
        try {
          std::vector<ObjPtr> objs;
          for (int k = 0; k < 3; ++k) {
            objs.push_back(obj());
            expect(Tok::Comma, "','");
          }
          ArrowPtr body = arrow();
          expect(Tok::RBracket, "']'");
          return arr_call(std::move(body), std::move(objs));
        } catch (const ParseError&) {
          pos_ = save;
        }
      }
      ArrowPtr body = arrow();
      expect(Tok::RBracket, "']'");
      return arr_call(std::move(body));
    }
    if (eat(Tok::LParen)) {
      ArrowPtr a = arrow();
      expect(Tok::RParen, "')'");
      return a;
    }
    fail("expected an arrow");
  }

  // Data literals.
  Forest data_body() {
    Forest f;
    for (;;) {
      if (at(Tok::Lt)) {
        Token lt = toks_[pos_++];
        std::uint64_t tag = tag_value();
        expect(Tok::Comma, "',' after a tag");
        Forest children = data_body();
        expect(Tok::Gt, "'>' closing a tree");
        (void)lt;
        f.push_back(mk_node(tag, std::move(children)));
      } else if (at(Tok::LBrace)) {
        ++pos_;
        f.push_back(leaf_value());
        expect(Tok::RBrace, "'}' closing a basic datum");
      } else if (at(Tok::Int)) {
        f.push_back(leaf_value());
      } else if (at(Tok::DartStart) || at(Tok::DartEnd)) {
        fail("negative values are not allowed in data");
      } else {
        return f;
      }
    }
  }

  std::uint64_t tag_value() {
    if (at(Tok::DartStart) || at(Tok::DartEnd))
      fail("negative tags are not allowed");
    Token t = expect(Tok::Int, "a tag");
    auto n = nat_from_decimal(t.text);
    if (!n || *n > Nat(std::numeric_limits<std::uint64_t>::max()))
      throw ParseError(t.line, t.col, "tag out of range");
    return n->convert_to<std::uint64_t>();
  }

  Tree leaf_value() {
    Token t = expect(Tok::Int, "a basic datum");
    auto n = nat_from_decimal(t.text);
    if (!n) throw ParseError(t.line, t.col, "malformed datum");
    return Tree::leaf(*n);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse_program(const std::string& text) {
  return Parser(text).program();
}

Forest parse_data(const std::string& text) { return Parser(text).data(); }

ObjPtr parse_obj(const std::string& text) { return Parser(text).obj_entry(); }

ArrowPtr parse_arrow(const std::string& text) {
  return Parser(text).arrow_entry();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Object precedence: sum 1, product 2, atom 3.
void print_obj_rec(const ObjPtr& o, int min_prec, std::string& out) {
  switch (o->kind) {
    case ObjExpr::Kind::Basic:
      out += o->name;
      return;
    case ObjExpr::Kind::Terminal:
      out += 'I';
      return;
    case ObjExpr::Kind::Initial:
      out += 'O';
      return;
    case ObjExpr::Kind::Sum: {
      bool paren = min_prec > 1;
      if (paren) out += '(';
      print_obj_rec(o->left, 1, out);
      out += " + ";
      print_obj_rec(o->right, 2, out);
      if (paren) out += ')';
      return;
    }
    case ObjExpr::Kind::Prod: {
      bool paren = min_prec > 2;
      if (paren) out += '(';
      print_obj_rec(o->left, 2, out);
      out += " * ";
      print_obj_rec(o->right, 3, out);
      if (paren) out += ')';
      return;
    }
  }
}

void print_arrow_rec(const ArrowPtr& a, int min_prec, std::string& out);

void print_objs_args(const std::vector<ObjPtr>& objs, std::string& out) {
  if (objs.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (i) out += ", ";
    print_obj_rec(objs[i], 1, out);
  }
  out += ')';
}

// Arrow precedence: pairing 0, seq 1, sum 2, prod 3, atom 4. Seq/sum/prod are
// right associative, pairing is non-associative.
void print_binary(const ArrowPtr& a, int prec, const char* op, int min_prec,
                  std::string& out) {
  bool paren = min_prec > prec;
  if (paren) out += '(';
  print_arrow_rec(a->left, prec + 1, out);
  out += op;
  print_arrow_rec(a->right, prec, out);
  if (paren) out += ')';
}

void print_arrow_rec(const ArrowPtr& a, int min_prec, std::string& out) {
  using K = ArrowExpr::Kind;
  switch (a->kind) {
    case K::Basic:
      out += a->name;
      return;
    case K::Id:
      out += "id";
      print_objs_args(a->objs, out);
      return;
    case K::Inj1:
      out += "inj_1";
      print_objs_args(a->objs, out);
      return;
    case K::Inj2:
      out += "inj_2";
      print_objs_args(a->objs, out);
      return;
    case K::Proj1:
      out += "proj_1";
      print_objs_args(a->objs, out);
      return;
    case K::Proj2:
      out += "proj_2";
      print_objs_args(a->objs, out);
      return;
    case K::Bang:
      out += "!";
      print_objs_args(a->objs, out);
      return;
    case K::TermMap:
      out += "term";
      print_objs_args(a->objs, out);
      return;
    case K::Dist:
      out += "dist";
      print_objs_args(a->objs, out);
      return;
    case K::Call: {
      out += "call[";
      if (!a->objs.empty()) {
        for (const auto& o : a->objs) {
          print_obj_rec(o, 1, out);
          out += ", ";
        }
      }
      print_arrow_rec(a->left, 0, out);
      out += ']';
      return;
    }
    case K::Case: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      print_arrow_rec(a->left, 1, out);
      out += " | ";
      print_arrow_rec(a->right, 1, out);
      if (paren) out += ')';
      return;
    }
    case K::Pair: {
      bool paren = min_prec > 0;
      if (paren) out += '(';
      print_arrow_rec(a->left, 1, out);
      out += ", ";
      print_arrow_rec(a->right, 1, out);
      if (paren) out += ')';
      return;
    }
    case K::Seq:
      print_binary(a, 1, " ; ", min_prec, out);
      return;
    case K::Sum:
      print_binary(a, 2, " + ", min_prec, out);
      return;
    case K::Prod:
      print_binary(a, 3, " * ", min_prec, out);
      return;
  }
}

}  // namespace

std::string print_obj(const ObjPtr& o) {
  std::string s;
  print_obj_rec(o, 1, s);
  return s;
}

std::string print_arrow(const ArrowPtr& a) {
  std::string s;
  print_arrow_rec(a, 0, s);
  return s;
}

std::string print_program(const Program& p) {
  std::string s = "obj ";
  for (std::size_t i = 0; i < p.objects.size(); ++i) {
    if (i) s += ", ";
    s += p.objects[i].first;
  }
  s += ";\n\nlib ";
  for (std::size_t i = 0; i < p.refs.size(); ++i) {
    if (i) s += ",\n    ";
    s += p.refs[i].name + " : " + print_obj(p.refs[i].dom) + " --> " +
         print_obj(p.refs[i].cod);
  }
  s += ";\n\ndef ";
  for (std::size_t i = 0; i < p.defs.size(); ++i) {
    const Def& d = p.defs[i];
    if (i) s += ";\n\n    ";
    s += d.name + " : " + print_obj(d.dom);
    for (const Step& st : d.steps)
      s += "\n      --" + print_arrow(st.arrow) + "--> " + print_obj(st.cod);
  }
  s += "\n.\n";
  return s;
}

std::string print_tree(const Tree& t) {
  if (t.is_leaf()) return to_string(t.datum());
  return "<" + std::to_string(t.tag()) + ", " + print_data(t.children()) + ">";
}

std::string print_data(const Forest& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ' ';
    s += print_tree(f[i]);
  }
  return s;
}

}  // namespace impg
