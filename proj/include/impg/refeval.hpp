#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>

#include "impg/code.hpp"
#include "impg/forest.hpp"
#include "impg/signature.hpp"
#include "impg/syntax.hpp"
#include "impg/vm.hpp"

namespace impg {

// Nested injection/tuple values: the direct set semantics of arrows.
struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Value {
  enum class Kind { Unit, Base, Pair, Inl, Inr };
  Kind kind;
  BasicDatum datum;  // Base
  ValuePtr l, r;     // Pair both, Inl/Inr left
};

ValuePtr v_unit();
ValuePtr v_base(BasicDatum d);
ValuePtr v_pair(ValuePtr l, ValuePtr r);
ValuePtr v_inl(ValuePtr v);
ValuePtr v_inr(ValuePtr v);

bool value_equal(const ValuePtr& a, const ValuePtr& b);
bool value_checks(const ValuePtr& v, const ObjPtr& t);
std::string print_value(const ValuePtr& v);

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Direct set-semantics evaluation of a fully annotated arrow. Basic arrows
// evaluate through a value/forest bridge: library arrows dispatch to the
// registry, previously compiled arrows to their elaborated definitions in
// `prog` (may be null when no definitions are referenced). The budget bounds
// loop-body applications.
ValuePtr eval_ref(const ArrowPtr& f, const ValuePtr& v, const Signature& sig,
                  const CompiledProgram* prog = nullptr,
                  std::uint64_t budget = kDefaultBudget);

// Representation of a value as a forest at the object's flat normal form.
Forest rep(const ValuePtr& v, const ObjPtr& t);
// Same through the canonical object reading of a flat object.
Forest rep(const ValuePtr& v, const FlatObj& t);

// Partial inverse of rep at a known type.
ValuePtr unrep(const Forest& d, const ObjPtr& t);

// ---------------------------------------------------------------------------
// Randomized well-typed generation (deterministic in the seed)

bool inhabited(const ObjPtr& t);

// Random value of an inhabited type; throws EvalError on uninhabited input.
ValuePtr gen_value(const ObjPtr& t, std::mt19937_64& rng);

// Random type over the given basic names plus I, sums and products.
ObjPtr gen_type(std::mt19937_64& rng, int depth,
                const std::vector<std::string>& basics = {"N", "A", "B", "C"});

struct GeneratedArrow {
  ArrowPtr arrow;  // fully annotated, total by construction
  ObjPtr cod;
};

// Random elaborated arrow out of `dom`, covering every constructor
// (iteration uses a bounded-counter pattern, so evaluation always ends).
GeneratedArrow gen_arrow(const ObjPtr& dom, int depth, std::mt19937_64& rng,
                         const Signature& sig);

// Arrow I -> t producing exactly the given value; t must be built from
// N, I, sums and products.
ArrowPtr const_arrow(const ValuePtr& v, const ObjPtr& t);

}  // namespace impg
