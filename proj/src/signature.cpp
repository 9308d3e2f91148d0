#include "impg/signature.hpp"

#include <algorithm>

namespace impg {

bool obj_built_from(const ObjPtr& x, const std::vector<std::string>& objs) {
  switch (x->kind) {
    case ObjExpr::Kind::Basic:
      return std::find(objs.begin(), objs.end(), x->name) != objs.end();
    case ObjExpr::Kind::Terminal:
    case ObjExpr::Kind::Initial:
      return true;
    default:
      return obj_built_from(x->left, objs) && obj_built_from(x->right, objs);
  }
}

bool arrow_built_from(const ArrowPtr& f, const Signature& sig) {
  using K = ArrowExpr::Kind;
  switch (f->kind) {
    case K::Basic:
      return sig.lookup(f->name) != nullptr;
    case K::Id:
    case K::Inj1:
    case K::Inj2:
    case K::Proj1:
    case K::Proj2:
    case K::Bang:
    case K::TermMap:
    case K::Dist:
      return true;
    case K::Call:
      return arrow_built_from(f->left, sig);
    default:
      return arrow_built_from(f->left, sig) && arrow_built_from(f->right, sig);
  }
}

std::string Diagnostic::render() const {
  switch (kind) {
    case Kind::DuplicateObject:
      return "object name " + name + " already used";
    case Kind::DuplicateArrow:
      return "arrow name " + name + " already used";
    case Kind::UndeclaredObjects:
      return "object " + print_obj(obj) + " contains undeclared basic objects";
    case Kind::UndeclaredArrows:
      return "arrow " + print_arrow(arrow) +
             " contains undeclared basic arrows";
    case Kind::NotFromTo:
      return "arrow " + print_arrow(arrow) + " is not from " + print_obj(from) +
             " to " + print_obj(to);
    case Kind::Ambiguous:
      return "arrow " + print_arrow(arrow) + " is ambiguous";
  }
  return {};
}

Diagnostic diag_duplicate_object(std::string name, Span s) {
  Diagnostic d;
  d.kind = Diagnostic::Kind::DuplicateObject;
  d.name = std::move(name);
  d.span = s;
  return d;
}

Diagnostic diag_duplicate_arrow(std::string name, Span s) {
  Diagnostic d;
  d.kind = Diagnostic::Kind::DuplicateArrow;
  d.name = std::move(name);
  d.span = s;
  return d;
}

Diagnostic diag_undeclared_objects(ObjPtr obj, Span s) {
  Diagnostic d;
  d.kind = Diagnostic::Kind::UndeclaredObjects;
  d.obj = std::move(obj);
  d.span = s;
  return d;
}

Diagnostic diag_undeclared_arrows(ArrowPtr arrow, Span s) {
  Diagnostic d;
  d.kind = Diagnostic::Kind::UndeclaredArrows;
  d.arrow = std::move(arrow);
  d.span = s;
  return d;
}

Diagnostic diag_not_from_to(ArrowPtr arrow, ObjPtr from, ObjPtr to, Span s) {
  Diagnostic d;
  d.kind = Diagnostic::Kind::NotFromTo;
  d.arrow = std::move(arrow);
  d.from = std::move(from);
  d.to = std::move(to);
  d.span = s;
  return d;
}

Diagnostic diag_ambiguous(ArrowPtr arrow, Span s) {
  Diagnostic d;
  d.kind = Diagnostic::Kind::Ambiguous;
  d.arrow = std::move(arrow);
  d.span = s;
  return d;
}

}  // namespace impg
