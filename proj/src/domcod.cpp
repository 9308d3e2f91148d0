#include "impg/domcod.hpp"

namespace impg {

namespace {

MaybeFlat combine_sum(MaybeFlat a, MaybeFlat b) {
  if (!a || !b) return std::nullopt;
  return rebuild_sum({std::move(*a), std::move(*b)});
}

MaybeFlat combine_prod(MaybeFlat a, MaybeFlat b) {
  if (!a || !b) return std::nullopt;
  return rebuild_prod({std::move(*a), std::move(*b)});
}

}  // namespace

MaybeFlat dom(const ArrowPtr& f, const Signature& sig) {
  using K = ArrowExpr::Kind;
  switch (f->kind) {
    case K::Basic: {
      const SpecEntry* e = sig.lookup(f->name);
      if (!e) return std::nullopt;
      return e->dom;
    }
    case K::Id:
    case K::TermMap:
      if (f->annotated()) return flatten(f->objs[0]);
      return std::nullopt;
    case K::Inj1:
      if (f->annotated()) return flatten(f->objs[0]);
      return std::nullopt;
    case K::Inj2:
      if (f->annotated()) return flatten(f->objs[1]);
      return std::nullopt;
    case K::Proj1:
    case K::Proj2:
      if (f->annotated())
        return rebuild_prod({flatten(f->objs[0]), flatten(f->objs[1])});
      return std::nullopt;
    case K::Bang:
      // The initial map's domain is always the empty sum.
      return FlatObj::initial();
    case K::Dist:
      if (f->annotated())
        return rebuild_prod(
            {flatten(f->objs[0]),
             rebuild_sum({flatten(f->objs[1]), flatten(f->objs[2])})});
      return std::nullopt;
    case K::Sum:
    case K::Case:
      return combine_sum(dom(f->left, sig), dom(f->right, sig));
    case K::Prod:
      return combine_prod(dom(f->left, sig), dom(f->right, sig));
    case K::Pair: {
      // Either component may know the shared domain.
      MaybeFlat a = dom(f->left, sig);
      if (a) return a;
      return dom(f->right, sig);
    }
    case K::Seq:
      return dom(f->left, sig);
    case K::Call:
      if (f->annotated()) return flatten(f->objs[0]);
      return std::nullopt;
  }
  return std::nullopt;
}

MaybeFlat cod(const ArrowPtr& f, const Signature& sig) {
  using K = ArrowExpr::Kind;
  switch (f->kind) {
    case K::Basic: {
      const SpecEntry* e = sig.lookup(f->name);
      if (!e) return std::nullopt;
      return e->cod;
    }
    case K::Id:
      if (f->annotated()) return flatten(f->objs[0]);
      return std::nullopt;
    case K::TermMap:
      return FlatObj::terminal();
    case K::Inj1:
    case K::Inj2:
      if (f->annotated())
        return rebuild_sum({flatten(f->objs[0]), flatten(f->objs[1])});
      return std::nullopt;
    case K::Proj1:
      if (f->annotated()) return flatten(f->objs[0]);
      return std::nullopt;
    case K::Proj2:
      if (f->annotated()) return flatten(f->objs[1]);
      return std::nullopt;
    case K::Bang:
      if (f->annotated()) return flatten(f->objs[0]);
      return std::nullopt;
    case K::Dist:
      if (f->annotated()) {
        FlatObj x = flatten(f->objs[0]);
        FlatObj y1 = flatten(f->objs[1]);
        FlatObj y2 = flatten(f->objs[2]);
        return rebuild_sum(
            {rebuild_prod({x, y1}), rebuild_prod({std::move(x), y2})});
      }
      return std::nullopt;
    case K::Sum:
      return combine_sum(cod(f->left, sig), cod(f->right, sig));
    case K::Prod:
    case K::Pair:
      return combine_prod(cod(f->left, sig), cod(f->right, sig));
    case K::Case: {
      MaybeFlat a = cod(f->left, sig);
      if (a) return a;
      return cod(f->right, sig);
    }
    case K::Seq:
      return cod(f->right, sig);
    case K::Call:
      if (f->annotated()) return flatten(f->objs[2]);
      return std::nullopt;
  }
  return std::nullopt;
}

ObjPtr dom_obj(const ArrowPtr& f, const Signature& sig) {
  using K = ArrowExpr::Kind;
  switch (f->kind) {
    case K::Basic: {
      const SpecEntry* e = sig.lookup(f->name);
      return e ? e->dom_obj : nullptr;
    }
    case K::Id:
    case K::TermMap:
      return f->annotated() ? f->objs[0] : nullptr;
    case K::Inj1:
      return f->annotated() ? f->objs[0] : nullptr;
    case K::Inj2:
      return f->annotated() ? f->objs[1] : nullptr;
    case K::Proj1:
    case K::Proj2:
      return f->annotated() ? obj_prod(f->objs[0], f->objs[1]) : nullptr;
    case K::Bang:
      return obj_initial();
    case K::Dist:
      return f->annotated()
                 ? obj_prod(f->objs[0], obj_sum(f->objs[1], f->objs[2]))
                 : nullptr;
    case K::Sum:
    case K::Case: {
      ObjPtr a = dom_obj(f->left, sig), b = dom_obj(f->right, sig);
      return (a && b) ? obj_sum(std::move(a), std::move(b)) : nullptr;
    }
    case K::Prod: {
      ObjPtr a = dom_obj(f->left, sig), b = dom_obj(f->right, sig);
      return (a && b) ? obj_prod(std::move(a), std::move(b)) : nullptr;
    }
    case K::Pair: {
      ObjPtr a = dom_obj(f->left, sig);
      return a ? a : dom_obj(f->right, sig);
    }
    case K::Seq:
      return dom_obj(f->left, sig);
    case K::Call:
      return f->annotated() ? f->objs[0] : nullptr;
  }
  return nullptr;
}

ObjPtr cod_obj(const ArrowPtr& f, const Signature& sig) {
  using K = ArrowExpr::Kind;
  switch (f->kind) {
    case K::Basic: {
      const SpecEntry* e = sig.lookup(f->name);
      return e ? e->cod_obj : nullptr;
    }
    case K::Id:
      return f->annotated() ? f->objs[0] : nullptr;
    case K::TermMap:
      return obj_terminal();
    case K::Inj1:
    case K::Inj2:
      return f->annotated() ? obj_sum(f->objs[0], f->objs[1]) : nullptr;
    case K::Proj1:
      return f->annotated() ? f->objs[0] : nullptr;
    case K::Proj2:
      return f->annotated() ? f->objs[1] : nullptr;
    case K::Bang:
      return f->annotated() ? f->objs[0] : nullptr;
    case K::Dist:
      return f->annotated()
                 ? obj_sum(obj_prod(f->objs[0], f->objs[1]),
                           obj_prod(f->objs[0], f->objs[2]))
                 : nullptr;
    case K::Sum: {
      ObjPtr a = cod_obj(f->left, sig), b = cod_obj(f->right, sig);
      return (a && b) ? obj_sum(std::move(a), std::move(b)) : nullptr;
    }
    case K::Prod:
    case K::Pair: {
      ObjPtr a = cod_obj(f->left, sig), b = cod_obj(f->right, sig);
      return (a && b) ? obj_prod(std::move(a), std::move(b)) : nullptr;
    }
    case K::Case: {
      ObjPtr a = cod_obj(f->left, sig);
      return a ? a : cod_obj(f->right, sig);
    }
    case K::Seq:
      return cod_obj(f->right, sig);
    case K::Call:
      return f->annotated() ? f->objs[2] : nullptr;
  }
  return nullptr;
}

}  // namespace impg
