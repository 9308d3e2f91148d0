#pragma once

#include "impg/compiler.hpp"
#include "impg/signature.hpp"
#include "impg/syntax.hpp"

namespace impg {

// Whole-program diagnostics, in source order. Empty means well-typed.
// Exhaustive mode additionally reports ambiguous step arrows.
Diagnostics tc_program(const Program& p,
                       CompileMode mode = CompileMode::FirstSolution);

// Structural data check against an object expression.
bool tc_data(const Forest& d, const ObjPtr& t);

}  // namespace impg
