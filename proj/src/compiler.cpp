#include "impg/compiler.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace impg {

// ---------------------------------------------------------------------------
// Code constructors

namespace {
CodePtr make(Code c) { return std::make_shared<const Code>(std::move(c)); }
}  // namespace

CodePtr mk_op(BasicOp op) {
  Code c;
  c.kind = Code::Kind::Op;
  c.op = std::move(op);
  return make(std::move(c));
}

CodePtr mk_apply(std::string name) {
  BasicOp op;
  op.kind = BasicOp::Kind::Apply;
  op.name = std::move(name);
  return mk_op(std::move(op));
}

CodePtr mk_compref(std::string name) {
  Code c;
  c.kind = Code::Kind::CompRef;
  c.name = std::move(name);
  return make(std::move(c));
}

CodePtr mk_seq(CodePtr a, CodePtr b) {
  Code c;
  c.kind = Code::Kind::Seq;
  c.a = std::move(a);
  c.b = std::move(b);
  return make(std::move(c));
}

CodePtr mk_pairc(CodePtr a, CodePtr b) {
  Code c;
  c.kind = Code::Kind::PairC;
  c.a = std::move(a);
  c.b = std::move(b);
  return make(std::move(c));
}

CodePtr mk_pairidx(CodePtr a, std::uint64_t p, std::uint64_t q, CodePtr b) {
  Code c;
  c.kind = Code::Kind::PairIdx;
  c.a = std::move(a);
  c.b = std::move(b);
  c.m = p;
  c.n = q;
  return make(std::move(c));
}

CodePtr mk_casec(CodePtr a, std::uint64_t p, std::uint64_t q, CodePtr b) {
  Code c;
  c.kind = Code::Kind::CaseC;
  c.a = std::move(a);
  c.b = std::move(b);
  c.m = p;
  c.n = q;
  return make(std::move(c));
}

CodePtr mk_iter(CodePtr body, std::uint64_t m, std::uint64_t n,
                std::uint64_t p) {
  Code c;
  c.kind = Code::Kind::Iter;
  c.a = std::move(body);
  c.m = m;
  c.n = n;
  c.k = p;
  return make(std::move(c));
}

bool code_equal(const CodePtr& a, const CodePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->m != b->m ||
      a->n != b->n || a->k != b->k)
    return false;
  if (a->kind == Code::Kind::Op && !(a->op == b->op)) return false;
  return code_equal(a->a, b->a) && code_equal(a->b, b->b);
}

bool is_optimized(const CodePtr& c) {
  if (!c) return true;
  if (c->kind == Code::Kind::PairIdx) return false;
  if (c->kind == Code::Kind::Op) {
    switch (c->op.kind) {
      case BasicOp::Kind::Inj1:
      case BasicOp::Kind::Inj2:
      case BasicOp::Kind::Proj1:
      case BasicOp::Kind::Proj2:
      case BasicOp::Kind::Dist4:
        return false;
      default:
        return true;
    }
  }
  return is_optimized(c->a) && is_optimized(c->b);
}

std::string dump_code(const CodePtr& c) {
  using OK = BasicOp::Kind;
  std::ostringstream os;
  switch (c->kind) {
    case Code::Kind::Op: {
      const BasicOp& op = c->op;
      switch (op.kind) {
        case OK::Apply: os << "(APPLY " << op.name << ")"; break;
        case OK::Nop: os << "(NOP)"; break;
        case OK::Init: os << "(INIT)"; break;
        case OK::Term: os << "(TERM)"; break;
        case OK::Tree: os << "(TREE " << op.a << ")"; break;
        case OK::RightDel: os << "(RIGHTDEL " << op.a << ")"; break;
        case OK::LeftDel: os << "(LEFTDEL " << op.a << ")"; break;
        case OK::Dist3:
          os << "(DIST " << op.a << " " << op.b << " " << op.c << ")";
          break;
        case OK::Inj1: os << "(INJ1 " << op.a << " " << op.b << ")"; break;
        case OK::Inj2: os << "(INJ2 " << op.a << " " << op.b << ")"; break;
        case OK::Proj1: os << "(PROJ1 " << op.a << " " << op.b << ")"; break;
        case OK::Proj2: os << "(PROJ2 " << op.a << " " << op.b << ")"; break;
        case OK::Dist4:
          os << "(DIST4 " << op.a << " " << op.b << " " << op.c << " " << op.d
             << ")";
          break;
      }
      break;
    }
    case Code::Kind::CompRef:
      os << "(COMP " << c->name << ")";
      break;
    case Code::Kind::Iter:
      os << "(ITER " << c->m << " " << c->n << " " << c->k << " "
         << dump_code(c->a) << ")";
      break;
    case Code::Kind::Seq:
      os << "(SEQ " << dump_code(c->a) << " " << dump_code(c->b) << ")";
      break;
    case Code::Kind::PairC:
      os << "(PAIR " << dump_code(c->a) << " " << dump_code(c->b) << ")";
      break;
    case Code::Kind::PairIdx:
      os << "(PAIRIDX " << c->m << " " << c->n << " " << dump_code(c->a) << " "
         << dump_code(c->b) << ")";
      break;
    case Code::Kind::CaseC:
      os << "(CASE " << c->m << " " << c->n << " " << dump_code(c->a) << " "
         << dump_code(c->b) << ")";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Peephole optimization

namespace {

bool is_op(const CodePtr& c, BasicOp::Kind k) {
  return c->kind == Code::Kind::Op && c->op.kind == k;
}

CodePtr simplify_op(const BasicOp& op) {
  using K = BasicOp::Kind;
  switch (op.kind) {
    case K::Inj1:
      if (op.a == 0) return mk_simple(K::Init);
      if (op.b == 0) return mk_simple(K::Nop);
      return mk_simple(K::Tree, 0);
    case K::Inj2:
      if (op.b == 0) return mk_simple(K::Init);
      if (op.a == 0) return mk_simple(K::Nop);
      return mk_simple(K::Tree, op.a);
    case K::Proj1:
      if (op.a == 0) return mk_simple(K::Term);
      if (op.b == 0) return mk_simple(K::Nop);
      return mk_simple(K::RightDel, op.b);
    case K::Proj2:
      if (op.b == 0) return mk_simple(K::Term);
      if (op.a == 0) return mk_simple(K::Nop);
      return mk_simple(K::LeftDel, op.a);
    case K::Dist4:
      if (op.a == 0) return mk_simple(K::Nop);
      if (op.b == 0) return mk_simple(K::Tree, 1);
      if (op.c == 0) return mk_simple(K::Tree, 0);
      return mk_simple(K::Dist3, op.b, op.c, op.d);
    default:
      return mk_op(op);
  }
}

}  // namespace

CodePtr peephole(const CodePtr& c) {
  switch (c->kind) {
    case Code::Kind::Op:
      return simplify_op(c->op);
    case Code::Kind::CompRef:
      return c;
    case Code::Kind::Seq: {
      CodePtr l = peephole(c->a), r = peephole(c->b);
      if (is_op(l, BasicOp::Kind::Init)) return l;
      if (is_op(r, BasicOp::Kind::Term)) return r;
      if (is_op(l, BasicOp::Kind::Nop)) return r;
      if (is_op(r, BasicOp::Kind::Nop)) return l;
      return mk_seq(std::move(l), std::move(r));
    }
    case Code::Kind::Iter: {
      if (c->m == 0) return mk_simple(BasicOp::Kind::Init);
      CodePtr b = peephole(c->a);
      if (c->n == 0) return b;
      return mk_iter(std::move(b), c->m, c->n, c->k);
    }
    case Code::Kind::CaseC: {
      if (c->m == 0) return peephole(c->b);
      if (c->n == 0) return peephole(c->a);
      return mk_casec(peephole(c->a), c->m, c->n, peephole(c->b));
    }
    case Code::Kind::PairIdx: {
      if (c->m == 0) return peephole(c->b);
      if (c->n == 0) return peephole(c->a);
      return mk_pairc(peephole(c->a), peephole(c->b));
    }
    case Code::Kind::PairC:
      return mk_pairc(peephole(c->a), peephole(c->b));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

FlatObj sum_of(const FlatList& items) { return rebuild_sum(items); }
FlatObj prod_of(const FlatList& items) { return rebuild_prod(items); }

FlatList concat_lists(FlatList a, const FlatList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

FlatList slice(const FlatList& v, std::size_t from, std::size_t to) {
  return FlatList(v.begin() + from, v.begin() + to);
}

bool prefix_eq(const FlatList& whole, const FlatList& pre) {
  if (pre.size() > whole.size()) return false;
  return std::equal(pre.begin(), pre.end(), whole.begin());
}

bool suffix_eq(const FlatList& whole, const FlatList& suf) {
  if (suf.size() > whole.size()) return false;
  return std::equal(suf.begin(), suf.end(), whole.end() - suf.size());
}

std::string memo_key(const ArrowPtr& f, const FlatObj& dom,
                     const FlatObj& cod) {
  std::ostringstream os;
  os << f.get() << '|' << dom.str() << '|' << cod.str();
  return os.str();
}

}  // namespace

std::optional<Compilation> Compiler::compile(const ArrowPtr& f,
                                             const FlatObj& dom,
                                             const FlatObj& cod) {
  const auto& sols = solve(f, dom, cod);
  if (sols.empty()) return std::nullopt;
  return sols.front();
}

const std::vector<Compilation>& Compiler::solve(const ArrowPtr& f,
                                                const FlatObj& dom,
                                                const FlatObj& cod) {
  std::string key = memo_key(f, dom, cod);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second.solutions;
  // The recursion strictly descends the arrow tree, so re-entry on the same
  // key cannot occur while this frame is computing.
  auto sols = solve_uncached(f, dom, cod);
  return memo_.emplace(std::move(key), MemoEntry{f, std::move(sols)})
      .first->second.solutions;
}

std::vector<Compilation> Compiler::solve_uncached(const ArrowPtr& f,
                                                  const FlatObj& dom,
                                                  const FlatObj& cod) {
  using K = ArrowExpr::Kind;
  std::vector<Compilation> out;
  bool first_only = mode_ == CompileMode::FirstSolution;
  auto done = [&] { return first_only && !out.empty(); };
  auto add = [&](CodePtr code, ArrowPtr elab) {
    for (const auto& s : out)
      if (code_equal(s.code, code)) return;
    out.push_back({std::move(code), std::move(elab)});
  };

  switch (f->kind) {
    case K::Basic: {
      const SpecEntry* e = sig_.lookup(f->name);
      if (e && e->dom == dom && e->cod == cod) {
        if (e->kind == ArrowKind::Library)
          add(mk_apply(f->name), f);
        else
          add(mk_compref(f->name), f);
      }
      break;
    }

    case K::Id: {
      if (f->annotated()) {
        if (flatten(f->objs[0]) == dom && dom == cod)
          add(mk_simple(BasicOp::Kind::Nop), f);
      } else if (dom == cod && !dom.is_initial() && !dom.is_terminal()) {
        add(mk_simple(BasicOp::Kind::Nop),
            arr_structural(K::Id, {obj_of_flat(dom)}));
      }
      break;
    }

    case K::Inj1: {
      if (f->annotated()) {
        FlatObj x = flatten(f->objs[0]), y = flatten(f->objs[1]);
        if (x == dom && rebuild_sum({x, y}) == cod)
          add(mk_simple(BasicOp::Kind::Inj1, slen(x), slen(y)), f);
      } else {
        FlatList ds = as_sum(dom), cs = as_sum(cod);
        if (!ds.empty() && cs.size() > ds.size() && prefix_eq(cs, ds)) {
          FlatList rest = slice(cs, ds.size(), cs.size());
          add(mk_simple(BasicOp::Kind::Inj1, ds.size(), rest.size()),
              arr_structural(K::Inj1,
                             {obj_of_flat(dom), obj_of_flat(sum_of(rest))}));
        }
      }
      break;
    }

    case K::Inj2: {
      if (f->annotated()) {
        FlatObj x = flatten(f->objs[0]), y = flatten(f->objs[1]);
        if (y == dom && rebuild_sum({x, y}) == cod)
          add(mk_simple(BasicOp::Kind::Inj2, slen(x), slen(y)), f);
      } else {
        FlatList ds = as_sum(dom), cs = as_sum(cod);
        if (!ds.empty() && cs.size() > ds.size() && suffix_eq(cs, ds)) {
          FlatList pre = slice(cs, 0, cs.size() - ds.size());
          add(mk_simple(BasicOp::Kind::Inj2, pre.size(), ds.size()),
              arr_structural(K::Inj2,
                             {obj_of_flat(sum_of(pre)), obj_of_flat(dom)}));
        }
      }
      break;
    }

    case K::Proj1: {
      if (f->annotated()) {
        FlatObj x = flatten(f->objs[0]), y = flatten(f->objs[1]);
        if (x == cod && rebuild_prod({x, y}) == dom)
          add(mk_simple(BasicOp::Kind::Proj1, plen(x), plen(y)), f);
      } else {
        FlatList cs = as_prod(cod), dsm = as_prod(dom);
        if (!cs.empty() && dsm.size() > cs.size() && prefix_eq(dsm, cs)) {
          FlatList rest = slice(dsm, cs.size(), dsm.size());
          add(mk_simple(BasicOp::Kind::Proj1, cs.size(), rest.size()),
              arr_structural(K::Proj1,
                             {obj_of_flat(cod), obj_of_flat(prod_of(rest))}));
        }
      }
      break;
    }

    case K::Proj2: {
      if (f->annotated()) {
        FlatObj x = flatten(f->objs[0]), y = flatten(f->objs[1]);
        if (y == cod && rebuild_prod({x, y}) == dom)
          add(mk_simple(BasicOp::Kind::Proj2, plen(x), plen(y)), f);
      } else {
        FlatList cs = as_prod(cod), dsm = as_prod(dom);
        if (!cs.empty() && dsm.size() > cs.size() && suffix_eq(dsm, cs)) {
          FlatList pre = slice(dsm, 0, dsm.size() - cs.size());
          add(mk_simple(BasicOp::Kind::Proj2, pre.size(), cs.size()),
              arr_structural(K::Proj2,
                             {obj_of_flat(prod_of(pre)), obj_of_flat(cod)}));
        }
      }
      break;
    }

    case K::Bang: {
      if (!dom.is_initial()) break;
      if (f->annotated()) {
        if (flatten(f->objs[0]) == cod) add(mk_simple(BasicOp::Kind::Init), f);
      } else if (!cod.is_initial()) {
        add(mk_simple(BasicOp::Kind::Init),
            arr_structural(K::Bang, {obj_of_flat(cod)}));
      }
      break;
    }

    case K::TermMap: {
      if (!cod.is_terminal()) break;
      if (f->annotated()) {
        if (flatten(f->objs[0]) == dom) add(mk_simple(BasicOp::Kind::Term), f);
      } else if (!dom.is_terminal()) {
        add(mk_simple(BasicOp::Kind::Term),
            arr_structural(K::TermMap, {obj_of_flat(dom)}));
      }
      break;
    }

    case K::Dist: {
      if (f->annotated()) {
        FlatObj x = flatten(f->objs[0]);
        FlatObj y1 = flatten(f->objs[1]), y2 = flatten(f->objs[2]);
        FlatObj want_dom = rebuild_prod({x, rebuild_sum({y1, y2})});
        FlatObj o1 = rebuild_prod({x, y1}), o2 = rebuild_prod({x, y2});
        if (want_dom == dom && rebuild_sum({o1, o2}) == cod)
          add(mk_simple(BasicOp::Kind::Dist4, plen(x), slen(y1), slen(y2),
                        slen(o1)),
              f);
      } else {
        FlatList dsm = as_prod(dom);
        if (dsm.size() < 2 || !dsm.back().is_sum()) break;
        const FlatList& summands = dsm.back().items();
        if (summands.size() < 2) break;
        FlatList xs = slice(dsm, 0, dsm.size() - 1);
        for (std::size_t k = 1; k < summands.size(); ++k) {
          FlatList t1 = slice(summands, 0, k);
          FlatList t2 = slice(summands, k, summands.size());
          FlatObj o1 = prod_of(concat_lists(xs, {sum_of(t1)}));
          FlatObj o2 = prod_of(concat_lists(xs, {sum_of(t2)}));
          if (slen(o1) == 0 || slen(o2) == 0) continue;
          if (rebuild_sum({o1, o2}) != cod) continue;
          add(mk_simple(BasicOp::Kind::Dist4, xs.size(), t1.size(), t2.size(),
                        slen(o1)),
              arr_structural(K::Dist, {obj_of_flat(prod_of(xs)),
                                       obj_of_flat(sum_of(t1)),
                                       obj_of_flat(sum_of(t2))}));
          if (done()) break;
        }
      }
      break;
    }

    case K::Sum: {
      FlatList ds = as_sum(dom), cs = as_sum(cod);
      for (std::size_t i = 0; i <= ds.size() && !done(); ++i) {
        FlatObj d1 = sum_of(slice(ds, 0, i));
        FlatObj d2 = sum_of(slice(ds, i, ds.size()));
        for (std::size_t j = 0; j <= cs.size() && !done(); ++j) {
          FlatObj c1 = sum_of(slice(cs, 0, j));
          FlatObj c2 = sum_of(slice(cs, j, cs.size()));
          const auto& ls = solve(f->left, d1, c1);
          if (ls.empty()) continue;
          const auto& rs = solve(f->right, d2, c2);
          for (const auto& l : ls) {
            for (const auto& r : rs) {
              CodePtr inj1 = mk_simple(BasicOp::Kind::Inj1, j, cs.size() - j);
              CodePtr inj2 = mk_simple(BasicOp::Kind::Inj2, j, cs.size() - j);
              add(mk_casec(mk_seq(l.code, inj1), i, ds.size() - i,
                           mk_seq(r.code, inj2)),
                  arr_binary(K::Sum, l.elaborated, r.elaborated));
              if (done()) break;
            }
            if (done()) break;
          }
        }
      }
      break;
    }

    case K::Prod: {
      FlatList ds = as_prod(dom), cs = as_prod(cod);
      for (std::size_t i = 0; i <= ds.size() && !done(); ++i) {
        FlatObj d1 = prod_of(slice(ds, 0, i));
        FlatObj d2 = prod_of(slice(ds, i, ds.size()));
        for (std::size_t j = 0; j <= cs.size() && !done(); ++j) {
          FlatObj c1 = prod_of(slice(cs, 0, j));
          FlatObj c2 = prod_of(slice(cs, j, cs.size()));
          const auto& ls = solve(f->left, d1, c1);
          if (ls.empty()) continue;
          const auto& rs = solve(f->right, d2, c2);
          for (const auto& l : ls) {
            for (const auto& r : rs) {
              CodePtr p1 = mk_simple(BasicOp::Kind::Proj1, i, ds.size() - i);
              CodePtr p2 = mk_simple(BasicOp::Kind::Proj2, i, ds.size() - i);
              add(mk_pairidx(mk_seq(p1, l.code), j, cs.size() - j,
                             mk_seq(p2, r.code)),
                  arr_binary(K::Prod, l.elaborated, r.elaborated));
              if (done()) break;
            }
            if (done()) break;
          }
        }
      }
      break;
    }

    case K::Case: {
      FlatList ds = as_sum(dom);
      for (std::size_t i = 0; i <= ds.size() && !done(); ++i) {
        FlatObj d1 = sum_of(slice(ds, 0, i));
        FlatObj d2 = sum_of(slice(ds, i, ds.size()));
        const auto& ls = solve(f->left, d1, cod);
        if (ls.empty()) continue;
        const auto& rs = solve(f->right, d2, cod);
        for (const auto& l : ls) {
          for (const auto& r : rs) {
            add(mk_casec(l.code, i, ds.size() - i, r.code),
                arr_binary(K::Case, l.elaborated, r.elaborated));
            if (done()) break;
          }
          if (done()) break;
        }
      }
      break;
    }

    case K::Pair: {
      FlatList cs = as_prod(cod);
      for (std::size_t j = 0; j <= cs.size() && !done(); ++j) {
        FlatObj c1 = prod_of(slice(cs, 0, j));
        FlatObj c2 = prod_of(slice(cs, j, cs.size()));
        const auto& ls = solve(f->left, dom, c1);
        if (ls.empty()) continue;
        const auto& rs = solve(f->right, dom, c2);
        for (const auto& l : ls) {
          for (const auto& r : rs) {
            add(mk_pairidx(l.code, j, cs.size() - j, r.code),
                arr_binary(K::Pair, l.elaborated, r.elaborated));
            if (done()) break;
          }
          if (done()) break;
        }
      }
      break;
    }

    case K::Seq: {
      // Middle object: try the codomain of the left factor first, then the
      // domain of the right one.
      std::vector<FlatObj> mids;
      if (MaybeFlat a = impg::cod(f->left, sig_)) mids.push_back(std::move(*a));
      if (MaybeFlat b = impg::dom(f->right, sig_)) {
        if (mids.empty() || mids.front() != *b) mids.push_back(std::move(*b));
      }
      for (const FlatObj& mid : mids) {
        const auto& ls = solve(f->left, dom, mid);
        if (ls.empty()) continue;
        const auto& rs = solve(f->right, mid, cod);
        for (const auto& l : ls) {
          for (const auto& r : rs) {
            add(mk_seq(l.code, r.code),
                arr_binary(K::Seq, l.elaborated, r.elaborated));
            if (done()) break;
          }
          if (done()) break;
        }
        if (done()) break;
      }
      break;
    }

    case K::Call: {
      if (f->annotated()) {
        FlatObj x = flatten(f->objs[0]);
        FlatObj u = flatten(f->objs[1]);
        FlatObj y = flatten(f->objs[2]);
        if (y.is_initial() || x != dom || y != cod) break;
        FlatObj bd = rebuild_sum({x, u}), bc = rebuild_sum({u, y});
        for (const auto& s : solve(f->left, bd, bc)) {
          add(mk_iter(s.code, slen(x), slen(u), slen(y)),
              arr_call(s.elaborated, f->objs));
          if (done()) break;
        }
        break;
      }
      // Infer the state split from the body's domain, then from its codomain.
      if (!cod.is_initial()) {
        FlatList ds = as_sum(dom);
        MaybeFlat bd = impg::dom(f->left, sig_);
        if (!ds.empty() && bd) {
          FlatList bds = as_sum(*bd);
          if (bds.size() > ds.size() && prefix_eq(bds, ds)) {
            FlatList u = slice(bds, ds.size(), bds.size());
            FlatObj bc = rebuild_sum(concat_lists(u, as_sum(cod)));
            for (const auto& s : solve(f->left, *bd, bc)) {
              add(mk_iter(s.code, ds.size(), u.size(), slen(cod)),
                  arr_call(s.elaborated,
                           {obj_of_flat(dom), obj_of_flat(sum_of(u)),
                            obj_of_flat(cod)}));
              if (done()) break;
            }
          }
        }
      }
      if (done()) break;
      {
        FlatList ws = as_sum(cod);
        MaybeFlat bcod = impg::cod(f->left, sig_);
        if (!ws.empty() && bcod) {
          FlatList bcs = as_sum(*bcod);
          if (bcs.size() > ws.size() && suffix_eq(bcs, ws)) {
            FlatList u = slice(bcs, 0, bcs.size() - ws.size());
            FlatObj bd2 = rebuild_sum(concat_lists(as_sum(dom), u));
            for (const auto& s : solve(f->left, bd2, *bcod)) {
              add(mk_iter(s.code, slen(dom), u.size(), ws.size()),
                  arr_call(s.elaborated,
                           {obj_of_flat(dom), obj_of_flat(sum_of(u)),
                            obj_of_flat(cod)}));
              if (done()) break;
            }
          }
        }
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole programs

CompiledProgram compile_program(const Program& p) {
  CompiledProgram out;
  for (const Ref& r : p.refs)
    out.sig.append({r.name, flatten(r.dom), flatten(r.cod), ArrowKind::Library,
                    r.dom, r.cod});
  for (const Def& d : p.defs) {
    Compiler comp(out.sig);
    CodePtr chain;
    ArrowPtr elab_chain;
    ObjPtr cur = d.dom;
    // Steps compile right to left so the sequence nests the way juxtaposition
    // of darts composes.
    std::vector<Compilation> parts;
    for (const Step& st : d.steps) {
      auto res = comp.compile(st.arrow, flatten(cur), flatten(st.cod));
      if (!res)
        throw CompileError(d.name, "definition " + d.name +
                                       ": step arrow " +
                                       print_arrow(st.arrow) + " is not from " +
                                       print_obj(cur) + " to " +
                                       print_obj(st.cod));
      parts.push_back(std::move(*res));
      cur = st.cod;
    }
    chain = parts.back().code;
    elab_chain = parts.back().elaborated;
    for (std::size_t i = parts.size() - 1; i-- > 0;) {
      chain = mk_seq(parts[i].code, std::move(chain));
      elab_chain = arr_binary(ArrowExpr::Kind::Seq, parts[i].elaborated,
                              std::move(elab_chain));
    }
    ObjPtr final_cod = d.steps.back().cod;
    out.defs.push_back({d.name, std::move(chain), std::move(elab_chain), d.dom,
                        final_cod});
    out.sig.prepend({d.name, flatten(d.dom), flatten(final_cod),
                     ArrowKind::Defined, d.dom, final_cod});
  }
  return out;
}

CompiledProgram optimize(CompiledProgram cp) {
  for (auto& d : cp.defs) d.code = peephole(d.code);
  return cp;
}

ArrowPtr elaborate(const ArrowPtr& f, const FlatObj& dom, const FlatObj& cod,
                   const Signature& sig) {
  Compiler comp(sig);
  auto res = comp.compile(f, dom, cod);
  if (!res)
    throw CompileError("", "arrow " + print_arrow(f) + " is not from " +
                               dom.str() + " to " + cod.str());
  return res->elaborated;
}

AmbiguityReport check_ambiguous(const ArrowPtr& f, const FlatObj& dom,
                                const FlatObj& cod, const Signature& sig) {
  Compiler comp(sig, CompileMode::Exhaustive);
  AmbiguityReport rep;
  for (const auto& s : comp.solve(f, dom, cod)) {
    CodePtr opt = peephole(s.code);
    bool seen = false;
    for (const auto& c : rep.distinct_codes)
      if (code_equal(c, opt)) {
        seen = true;
        break;
      }
    if (!seen) rep.distinct_codes.push_back(std::move(opt));
  }
  rep.ambiguous = rep.distinct_codes.size() >= 2;
  return rep;
}

}  // namespace impg
