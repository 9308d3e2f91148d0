#include "impg/typecheck.hpp"

#include <algorithm>

namespace impg {

namespace {

// Emits one diagnostic per object containing undeclared basic names.
void check_objs(const std::vector<std::pair<ObjPtr, Span>>& objs,
                const std::vector<std::string>& declared, Diagnostics& out) {
  for (const auto& [o, span] : objs)
    if (!obj_built_from(o, declared))
      out.push_back(diag_undeclared_objects(o, span));
}

}  // namespace

Diagnostics tc_program(const Program& p, CompileMode mode) {
  Diagnostics out;

  // Basic object list: duplicates.
  std::vector<std::string> declared;
  for (const auto& [name, span] : p.objects) {
    if (std::find(declared.begin(), declared.end(), name) != declared.end())
      out.push_back(diag_duplicate_object(name, span));
    else
      declared.push_back(name);
  }

  // Library references: object validity and name freshness.
  Signature sig;
  for (const Ref& r : p.refs) {
    check_objs({{r.dom, r.span}, {r.cod, r.span}}, declared, out);
    if (sig.lookup(r.name)) {
      out.push_back(diag_duplicate_arrow(r.name, r.span));
    } else {
      sig.append({r.name, flatten(r.dom), flatten(r.cod), ArrowKind::Library,
                  r.dom, r.cod});
    }
  }

  // Definitions: freshness, then per step undeclared-arrow and from/to
  // checks, the compiler acting as the step oracle.
  for (const Def& d : p.defs) {
    bool fresh = sig.lookup(d.name) == nullptr;
    if (!fresh) out.push_back(diag_duplicate_arrow(d.name, d.span));

    Compiler comp(sig, mode);
    ObjPtr cur = d.dom;
    for (const Step& st : d.steps) {
      check_objs({{cur, st.span}}, declared, out);
      if (!arrow_built_from(st.arrow, sig)) {
        out.push_back(diag_undeclared_arrows(st.arrow, st.span));
      } else {
        const auto& sols = comp.solve(st.arrow, flatten(cur), flatten(st.cod));
        if (sols.empty()) {
          out.push_back(diag_not_from_to(st.arrow, cur, st.cod, st.span));
        } else if (mode == CompileMode::Exhaustive) {
          std::vector<CodePtr> distinct;
          for (const auto& s : sols) {
            CodePtr opt = peephole(s.code);
            bool seen = false;
            for (const auto& c : distinct)
              if (code_equal(c, opt)) {
                seen = true;
                break;
              }
            if (!seen) distinct.push_back(std::move(opt));
          }
          if (distinct.size() >= 2)
            out.push_back(diag_ambiguous(st.arrow, st.span));
        }
      }
      cur = st.cod;
    }
    check_objs({{cur, d.span}}, declared, out);

    if (fresh)
      sig.prepend({d.name, flatten(d.dom), flatten(d.steps.back().cod),
                   ArrowKind::Defined, d.dom, d.steps.back().cod});
  }
  return out;
}

bool tc_data(const Forest& d, const ObjPtr& t) {
  return check_data(d, flatten(t));
}

}  // namespace impg
