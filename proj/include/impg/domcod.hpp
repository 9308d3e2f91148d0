#pragma once

#include <optional>

#include "impg/objects.hpp"
#include "impg/signature.hpp"
#include "impg/syntax.hpp"

namespace impg {

// "Unknown" is the absorbing element: any flat-object construction fed an
// unknown part is unknown, except the dual-sourced case/pair rules.
using MaybeFlat = std::optional<FlatObj>;

// Best-effort domain/codomain inference, assuming the arrow is well-typed.
// Advisory only; the compiler's type-check is the arbiter.
MaybeFlat dom(const ArrowPtr& f, const Signature& sig);
MaybeFlat cod(const ArrowPtr& f, const Signature& sig);

// Shape-faithful object-level dom/cod for elaborated arrows: every structural
// arrow and call annotated, basic arrows resolved to their declared shapes.
// Used by the set-semantics evaluator and the normal-form transformer, where
// the binary shape of values matters. Returns null when a shape cannot be
// determined (non-elaborated input).
ObjPtr dom_obj(const ArrowPtr& f, const Signature& sig);
ObjPtr cod_obj(const ArrowPtr& f, const Signature& sig);

}  // namespace impg
