#pragma once

#include <optional>
#include <string>
#include <vector>

#include "impg/objects.hpp"
#include "impg/syntax.hpp"

namespace impg {

enum class ArrowKind { Library, Defined };

struct SpecEntry {
  std::string name;
  FlatObj dom, cod;
  ArrowKind kind;
  // Declared shapes, kept for the set-semantics evaluator; may be null for
  // entries built from flat objects only.
  ObjPtr dom_obj, cod_obj;
};

// Symbol table for basic and previously compiled arrows. Lookup scans the
// entry list front to back and returns the first match.
class Signature {
 public:
  const SpecEntry* lookup(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }

  void append(SpecEntry e) { entries_.push_back(std::move(e)); }
  void prepend(SpecEntry e) { entries_.insert(entries_.begin(), std::move(e)); }

  const std::vector<SpecEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<SpecEntry> entries_;
};

inline const SpecEntry* spec_of(const std::string& name, const Signature& s) {
  return s.lookup(name);
}

// True iff every basic object name in x is declared; I and O always pass.
bool obj_built_from(const ObjPtr& x, const std::vector<std::string>& objs);

// True iff every basic arrow name in f is in sig; structural arrows always
// pass; call recurses into the body.
bool arrow_built_from(const ArrowPtr& f, const Signature& sig);

struct Diagnostic {
  enum class Kind {
    DuplicateObject,
    DuplicateArrow,
    UndeclaredObjects,
    UndeclaredArrows,
    NotFromTo,
    Ambiguous,
  };
  Kind kind;
  std::string name;  // DuplicateObject / DuplicateArrow
  ObjPtr obj;        // UndeclaredObjects
  ArrowPtr arrow;    // UndeclaredArrows / NotFromTo / Ambiguous
  ObjPtr from, to;   // NotFromTo
  Span span;

  std::string render() const;
};

using Diagnostics = std::vector<Diagnostic>;

Diagnostic diag_duplicate_object(std::string name, Span s = {});
Diagnostic diag_duplicate_arrow(std::string name, Span s = {});
Diagnostic diag_undeclared_objects(ObjPtr obj, Span s = {});
Diagnostic diag_undeclared_arrows(ArrowPtr arrow, Span s = {});
Diagnostic diag_not_from_to(ArrowPtr arrow, ObjPtr from, ObjPtr to, Span s = {});
Diagnostic diag_ambiguous(ArrowPtr arrow, Span s = {});

}  // namespace impg
