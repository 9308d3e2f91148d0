#include "impg/refeval.hpp"

#include <algorithm>

#include "impg/domcod.hpp"
#include "impg/stdlib_nat.hpp"

namespace impg {

// ---------------------------------------------------------------------------
// Values

namespace {
ValuePtr make_value(Value v) { return std::make_shared<const Value>(std::move(v)); }
}  // namespace

ValuePtr v_unit() {
  static const ValuePtr u = make_value({Value::Kind::Unit, 0, nullptr, nullptr});
  return u;
}

ValuePtr v_base(BasicDatum d) {
  return make_value({Value::Kind::Base, std::move(d), nullptr, nullptr});
}

ValuePtr v_pair(ValuePtr l, ValuePtr r) {
  return make_value({Value::Kind::Pair, 0, std::move(l), std::move(r)});
}

ValuePtr v_inl(ValuePtr v) {
  return make_value({Value::Kind::Inl, 0, std::move(v), nullptr});
}

ValuePtr v_inr(ValuePtr v) {
  return make_value({Value::Kind::Inr, 0, std::move(v), nullptr});
}

bool value_equal(const ValuePtr& a, const ValuePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Value::Kind::Unit: return true;
    case Value::Kind::Base: return a->datum == b->datum;
    case Value::Kind::Pair:
      return value_equal(a->l, b->l) && value_equal(a->r, b->r);
    case Value::Kind::Inl:
    case Value::Kind::Inr:
      return value_equal(a->l, b->l);
  }
  return false;
}

bool value_checks(const ValuePtr& v, const ObjPtr& t) {
  switch (t->kind) {
    case ObjExpr::Kind::Basic: return v->kind == Value::Kind::Base;
    case ObjExpr::Kind::Terminal: return v->kind == Value::Kind::Unit;
    case ObjExpr::Kind::Initial: return false;
    case ObjExpr::Kind::Sum:
      if (v->kind == Value::Kind::Inl) return value_checks(v->l, t->left);
      if (v->kind == Value::Kind::Inr) return value_checks(v->l, t->right);
      return false;
    case ObjExpr::Kind::Prod:
      return v->kind == Value::Kind::Pair && value_checks(v->l, t->left) &&
             value_checks(v->r, t->right);
  }
  return false;
}

std::string print_value(const ValuePtr& v) {
  switch (v->kind) {
    case Value::Kind::Unit: return "*";
    case Value::Kind::Base: return to_string(v->datum);
    case Value::Kind::Pair:
      return "<" + print_value(v->l) + ", " + print_value(v->r) + ">";
    case Value::Kind::Inl: return "inl(" + print_value(v->l) + ")";
    case Value::Kind::Inr: return "inr(" + print_value(v->l) + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Representation

Forest rep(const ValuePtr& v, const ObjPtr& t) {
  switch (t->kind) {
    case ObjExpr::Kind::Basic:
      if (v->kind != Value::Kind::Base) throw EvalError("rep: expected datum");
      return {Tree::leaf(v->datum)};
    case ObjExpr::Kind::Terminal:
      if (v->kind != Value::Kind::Unit) throw EvalError("rep: expected unit");
      return {};
    case ObjExpr::Kind::Initial:
      throw EvalError("rep: no values inhabit the initial object");
    case ObjExpr::Kind::Prod: {
      if (v->kind != Value::Kind::Pair) throw EvalError("rep: expected pair");
      return concat(rep(v->l, t->left), rep(v->r, t->right));
    }
    case ObjExpr::Kind::Sum: {
      std::size_t q = slen(flatten(t->left));
      std::size_t r = slen(flatten(t->right));
      if (v->kind == Value::Kind::Inl) {
        Forest u = rep(v->l, t->left);
        if (r == 0) return u;
        return {mk_node(0, std::move(u))};
      }
      if (v->kind == Value::Kind::Inr) {
        Forest u = rep(v->l, t->right);
        if (q == 0) return u;
        return {mk_node(q, std::move(u))};
      }
      throw EvalError("rep: expected an injection");
    }
  }
  throw EvalError("rep: bad type");
}

Forest rep(const ValuePtr& v, const FlatObj& t) { return rep(v, obj_of_flat(t)); }

ValuePtr unrep(const Forest& d, const ObjPtr& t) {
  switch (t->kind) {
    case ObjExpr::Kind::Basic:
      if (d.size() != 1 || !d.front().is_leaf())
        throw EvalError("unrep: expected one datum");
      return v_base(d.front().datum());
    case ObjExpr::Kind::Terminal:
      if (!d.empty()) throw EvalError("unrep: expected the empty forest");
      return v_unit();
    case ObjExpr::Kind::Initial:
      throw EvalError("unrep: initial object");
    case ObjExpr::Kind::Prod: {
      std::size_t k = plen(flatten(t->left));
      if (d.size() < k) throw EvalError("unrep: forest too short");
      Forest l(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k));
      Forest r(d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
      return v_pair(unrep(l, t->left), unrep(r, t->right));
    }
    case ObjExpr::Kind::Sum: {
      std::size_t q = slen(flatten(t->left));
      std::size_t r = slen(flatten(t->right));
      if (q == 0) return v_inr(unrep(d, t->right));
      if (r == 0) return v_inl(unrep(d, t->left));
      if (d.size() != 1 || d.front().is_leaf())
        throw EvalError("unrep: expected a tagged tree");
      std::uint64_t k = d.front().tag();
      const Forest& ch = d.front().children();
      if (k < q) {
        if (q == 1) return v_inl(unrep(ch, t->left));
        return v_inl(unrep(d, t->left));
      }
      std::uint64_t k2 = k - q;
      if (r == 1) {
        if (k2 != 0) throw EvalError("unrep: tag out of range");
        return v_inr(unrep(ch, t->right));
      }
      if (k2 >= r) throw EvalError("unrep: tag out of range");
      return v_inr(unrep({mk_node(k2, ch)}, t->right));
    }
  }
  throw EvalError("unrep: bad type");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct EvalCtx {
  const Signature& sig;
  const CompiledProgram* prog;
  std::uint64_t budget;

  void spend() {
    if (budget == 0) throw BudgetExhausted();
    --budget;
  }
};

ValuePtr eval(const ArrowPtr& f, const ValuePtr& v, EvalCtx& ctx) {
  using K = ArrowExpr::Kind;
  switch (f->kind) {
    case K::Id:
      return v;
    case K::Inj1:
      return v_inl(v);
    case K::Inj2:
      return v_inr(v);
    case K::Proj1:
      if (v->kind != Value::Kind::Pair) throw EvalError("proj_1: not a pair");
      return v->l;
    case K::Proj2:
      if (v->kind != Value::Kind::Pair) throw EvalError("proj_2: not a pair");
      return v->r;
    case K::TermMap:
      return v_unit();
    case K::Bang:
      throw EvalError("initial map applied to a value");
    case K::Dist: {
      // X * (Y + Z) -> X * Y + X * Z
      if (v->kind != Value::Kind::Pair || !v->r)
        throw EvalError("dist: not a pair");
      const ValuePtr& s = v->r;
      if (s->kind == Value::Kind::Inl) return v_inl(v_pair(v->l, s->l));
      if (s->kind == Value::Kind::Inr) return v_inr(v_pair(v->l, s->l));
      throw EvalError("dist: second component not an injection");
    }
    case K::Sum: {
      if (v->kind == Value::Kind::Inl) return v_inl(eval(f->left, v->l, ctx));
      if (v->kind == Value::Kind::Inr) return v_inr(eval(f->right, v->l, ctx));
      throw EvalError("sum: not an injection");
    }
    case K::Prod: {
      if (v->kind != Value::Kind::Pair) throw EvalError("prod: not a pair");
      return v_pair(eval(f->left, v->l, ctx), eval(f->right, v->r, ctx));
    }
    case K::Case: {
      if (v->kind == Value::Kind::Inl) return eval(f->left, v->l, ctx);
      if (v->kind == Value::Kind::Inr) return eval(f->right, v->l, ctx);
      throw EvalError("case: not an injection");
    }
    case K::Pair:
      return v_pair(eval(f->left, v, ctx), eval(f->right, v, ctx));
    case K::Seq:
      return eval(f->right, eval(f->left, v, ctx), ctx);
    case K::Call: {
      if (!f->annotated()) throw EvalError("call: missing annotation");
      // Iterate the body over X + U -> U + Y until it lands in Y.
      ValuePtr w = v_inl(v);
      for (;;) {
        ctx.spend();
        ValuePtr r = eval(f->left, w, ctx);
        if (r->kind == Value::Kind::Inr) return r->l;
        if (r->kind != Value::Kind::Inl)
          throw EvalError("call: body produced a non-injection");
        w = v_inr(r->l);
      }
    }
    case K::Basic: {
      const SpecEntry* e = ctx.sig.lookup(f->name);
      if (!e) throw EvalError("unknown basic arrow " + f->name);
      if (e->kind == ArrowKind::Defined) {
        const CompiledDef* d = ctx.prog ? ctx.prog->find(f->name) : nullptr;
        if (!d) throw EvalError("no definition available for " + f->name);
        ctx.spend();
        return eval(d->elaborated, v, ctx);
      }
      if (!e->dom_obj || !e->cod_obj)
        throw EvalError("library arrow without declared shapes: " + f->name);
      Forest out = apply_library(f->name, rep(v, e->dom_obj));
      return unrep(out, e->cod_obj);
    }
  }
  throw EvalError("bad arrow");
}

}  // namespace

ValuePtr eval_ref(const ArrowPtr& f, const ValuePtr& v, const Signature& sig,
                  const CompiledProgram* prog, std::uint64_t budget) {
  EvalCtx ctx{sig, prog, budget};
  return eval(f, v, ctx);
}

// ---------------------------------------------------------------------------
// Generators

bool inhabited(const ObjPtr& t) {
  switch (t->kind) {
    case ObjExpr::Kind::Basic:
    case ObjExpr::Kind::Terminal:
      return true;
    case ObjExpr::Kind::Initial:
      return false;
    case ObjExpr::Kind::Sum:
      return inhabited(t->left) || inhabited(t->right);
    case ObjExpr::Kind::Prod:
      return inhabited(t->left) && inhabited(t->right);
  }
  return false;
}

ValuePtr gen_value(const ObjPtr& t, std::mt19937_64& rng) {
  switch (t->kind) {
    case ObjExpr::Kind::Basic:
      return v_base(Nat(rng() % 7));
    case ObjExpr::Kind::Terminal:
      return v_unit();
    case ObjExpr::Kind::Initial:
      throw EvalError("gen_value: uninhabited type");
    case ObjExpr::Kind::Sum: {
      bool li = inhabited(t->left), ri = inhabited(t->right);
      if (!li && !ri) throw EvalError("gen_value: uninhabited type");
      bool left = li && (!ri || rng() % 2 == 0);
      return left ? v_inl(gen_value(t->left, rng))
                  : v_inr(gen_value(t->right, rng));
    }
    case ObjExpr::Kind::Prod:
      return v_pair(gen_value(t->left, rng), gen_value(t->right, rng));
  }
  throw EvalError("gen_value: bad type");
}

ObjPtr gen_type(std::mt19937_64& rng, int depth,
                const std::vector<std::string>& basics) {
  if (depth <= 0 || rng() % 3 == 0) {
    std::size_t k = rng() % (basics.size() + 1);
    if (k == basics.size()) return obj_terminal();
    return obj_basic(basics[k]);
  }
  ObjPtr l = gen_type(rng, depth - 1, basics);
  ObjPtr r = gen_type(rng, depth - 1, basics);
  return rng() % 2 ? obj_sum(l, r) : obj_prod(l, r);
}

namespace {

ArrowPtr st(ArrowExpr::Kind k, std::vector<ObjPtr> objs) {
  return arr_structural(k, std::move(objs));
}

ArrowPtr seq(ArrowPtr a, ArrowPtr b) {
  return arr_binary(ArrowExpr::Kind::Seq, std::move(a), std::move(b));
}

ArrowPtr twist_prod(const ObjPtr& a, const ObjPtr& b) {
  return arr_binary(ArrowExpr::Kind::Pair,
                    st(ArrowExpr::Kind::Proj2, {a, b}),
                    st(ArrowExpr::Kind::Proj1, {a, b}));
}

ArrowPtr nat_const(const Nat& n) {
  // I -> N: zero then successors.
  ArrowPtr zero = seq(st(ArrowExpr::Kind::Inj1, {obj_terminal(), obj_basic("N")}),
                      arr_basic("s"));
  ArrowPtr succ = seq(st(ArrowExpr::Kind::Inj2, {obj_terminal(), obj_basic("N")}),
                      arr_basic("s"));
  ArrowPtr acc = zero;
  for (Nat i = 0; i < n; ++i) acc = seq(acc, succ);
  return acc;
}

}  // namespace

ArrowPtr const_arrow(const ValuePtr& v, const ObjPtr& t) {
  switch (t->kind) {
    case ObjExpr::Kind::Terminal:
      return st(ArrowExpr::Kind::Id, {obj_terminal()});
    case ObjExpr::Kind::Basic:
      if (t->name != "N")
        throw EvalError("const_arrow: no constants for abstract object " +
                        t->name);
      return nat_const(v->datum);
    case ObjExpr::Kind::Sum:
      if (v->kind == Value::Kind::Inl)
        return seq(const_arrow(v->l, t->left),
                   st(ArrowExpr::Kind::Inj1, {t->left, t->right}));
      return seq(const_arrow(v->l, t->right),
                 st(ArrowExpr::Kind::Inj2, {t->left, t->right}));
    case ObjExpr::Kind::Prod:
      return arr_binary(ArrowExpr::Kind::Pair, const_arrow(v->l, t->left),
                        const_arrow(v->r, t->right));
    case ObjExpr::Kind::Initial:
      break;
  }
  throw EvalError("const_arrow: bad type");
}

namespace {

bool nat_only(const ObjPtr& t) {
  switch (t->kind) {
    case ObjExpr::Kind::Basic: return t->name == "N";
    case ObjExpr::Kind::Terminal: return true;
    case ObjExpr::Kind::Initial: return false;
    default:
      return nat_only(t->left) && nat_only(t->right);
  }
}

bool is_nat(const ObjPtr& t) {
  return t->kind == ObjExpr::Kind::Basic && t->name == "N";
}

GeneratedArrow gen_rec(const ObjPtr& dom, int depth, std::mt19937_64& rng,
                       const Signature& sig);

// Bounded-counter loop: enter with a constant countdown, step decrements and
// exits when it hits zero. Total on every input.
GeneratedArrow gen_call(const ObjPtr& dom, int depth, std::mt19937_64& rng,
                        const Signature& sig) {
  using K = ArrowExpr::Kind;
  GeneratedArrow g = gen_rec(dom, depth - 1, rng, sig);
  ObjPtr N = obj_basic("N");
  ObjPtr Y = g.cod;
  ObjPtr NY = obj_prod(N, Y);
  ObjPtr IN = obj_sum(obj_terminal(), N);
  ArrowPtr enter =
      seq(arr_binary(K::Pair, seq(st(K::TermMap, {dom}), nat_const(rng() % 3)),
                     g.arrow),
          st(K::Inj1, {NY, Y}));
  ArrowPtr step = seq(
      seq(seq(arr_binary(K::Prod, arr_basic("p"), st(K::Id, {Y})),
              twist_prod(IN, Y)),
          st(K::Dist, {Y, obj_terminal(), N})),
      arr_binary(K::Case,
                 seq(st(K::Proj1, {Y, obj_terminal()}), st(K::Inj2, {NY, Y})),
                 seq(twist_prod(Y, N), st(K::Inj1, {NY, Y}))));
  ArrowPtr body = arr_binary(K::Case, enter, step);
  return {arr_call(body, {dom, NY, Y}), Y};
}

GeneratedArrow gen_rec(const ObjPtr& dom, int depth, std::mt19937_64& rng,
                       const Signature& sig) {
  using K = ArrowExpr::Kind;
  const bool deep = depth > 0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    switch (rng() % (deep ? 14 : 7)) {
      case 0:
        return {st(K::Id, {dom}), dom};
      case 1:
        return {st(K::TermMap, {dom}), obj_terminal()};
      case 2: {
        ObjPtr r = gen_type(rng, 1);
        return {st(K::Inj1, {dom, r}), obj_sum(dom, r)};
      }
      case 3: {
        ObjPtr l = gen_type(rng, 1);
        return {st(K::Inj2, {l, dom}), obj_sum(l, dom)};
      }
      case 4: {
        if (dom->kind != ObjExpr::Kind::Prod) break;
        if (rng() % 2)
          return {st(K::Proj1, {dom->left, dom->right}), dom->left};
        return {st(K::Proj2, {dom->left, dom->right}), dom->right};
      }
      case 5: {
        if (dom->kind != ObjExpr::Kind::Prod ||
            dom->right->kind != ObjExpr::Kind::Sum)
          break;
        ObjPtr x = dom->left, y = dom->right->left, z = dom->right->right;
        return {st(K::Dist, {x, y, z}),
                obj_sum(obj_prod(x, y), obj_prod(x, z))};
      }
      case 6: {
        // Library arrows at their declared shapes.
        if (is_nat(dom)) return {arr_basic("p"), parse_obj("I + N")};
        if (obj_equal(dom, parse_obj("I + N")))
          return {arr_basic("s"), obj_basic("N")};
        if (obj_equal(dom, parse_obj("N * N"))) {
          static const char* ops[] = {"plus", "minus", "times", "gt", "ge", "eq"};
          const char* name = ops[rng() % 6];
          const SpecEntry* e = sig.lookup(name);
          return {arr_basic(name), e->cod_obj};
        }
        break;
      }
      case 7: {
        GeneratedArrow a = gen_rec(dom, depth - 1, rng, sig);
        GeneratedArrow b = gen_rec(a.cod, depth - 1, rng, sig);
        return {seq(a.arrow, b.arrow), b.cod};
      }
      case 8: {
        GeneratedArrow a = gen_rec(dom, depth - 1, rng, sig);
        GeneratedArrow b = gen_rec(dom, depth - 1, rng, sig);
        return {arr_binary(K::Pair, a.arrow, b.arrow),
                obj_prod(a.cod, b.cod)};
      }
      case 9: {
        if (dom->kind != ObjExpr::Kind::Sum) break;
        GeneratedArrow a = gen_rec(dom->left, depth - 1, rng, sig);
        GeneratedArrow b = gen_rec(dom->right, depth - 1, rng, sig);
        return {arr_binary(K::Sum, a.arrow, b.arrow), obj_sum(a.cod, b.cod)};
      }
      case 10: {
        if (dom->kind != ObjExpr::Kind::Prod) break;
        GeneratedArrow a = gen_rec(dom->left, depth - 1, rng, sig);
        GeneratedArrow b = gen_rec(dom->right, depth - 1, rng, sig);
        return {arr_binary(K::Prod, a.arrow, b.arrow), obj_prod(a.cod, b.cod)};
      }
      case 11: {
        if (dom->kind != ObjExpr::Kind::Sum) break;
        // Share one arrow across both branches so the codomains agree; when
        // the target is Nat-only, occasionally use a constant branch instead.
        GeneratedArrow h = gen_rec(dom, depth - 1, rng, sig);
        if (nat_only(h.cod) && inhabited(h.cod) && rng() % 2 == 0) {
          GeneratedArrow a = gen_rec(dom->left, depth - 1, rng, sig);
          if (nat_only(a.cod) && inhabited(a.cod)) {
            ArrowPtr fallback = seq(st(K::TermMap, {dom->right}),
                                    const_arrow(gen_value(a.cod, rng), a.cod));
            return {arr_binary(K::Case, a.arrow, fallback), a.cod};
          }
        }
        ArrowPtr via_l = seq(st(K::Inj1, {dom->left, dom->right}), h.arrow);
        ArrowPtr via_r = seq(st(K::Inj2, {dom->left, dom->right}), h.arrow);
        return {arr_binary(K::Case, via_l, via_r), h.cod};
      }
      case 12: {
        // An arm through the initial object exercises the initial map.
        GeneratedArrow a = gen_rec(dom, depth - 1, rng, sig);
        ArrowPtr wrapped =
            seq(st(K::Inj1, {dom, obj_initial()}),
                arr_binary(K::Case, a.arrow, st(K::Bang, {a.cod})));
        return {wrapped, a.cod};
      }
      case 13:
        return gen_call(dom, depth, rng, sig);
    }
  }
  // Exhausted retries on shape-specific options; the identity always fits.
  return {st(K::Id, {dom}), dom};
}

}  // namespace

GeneratedArrow gen_arrow(const ObjPtr& dom, int depth, std::mt19937_64& rng,
                         const Signature& sig) {
  return gen_rec(dom, depth, rng, sig);
}

}  // namespace impg
