#pragma once

#include <stdexcept>

#include "impg/signature.hpp"
#include "impg/syntax.hpp"

namespace impg {

// An arrow presented as a single iteration of a call-free body: the body is
// fully annotated and maps input+local -> local+output with exactly those
// shapes on either side.
struct CallForm {
  ObjPtr input, local, output;
  ArrowPtr body;
};

class CallNfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ArrowPtr as_call(const CallForm& cf);
bool call_free(const ArrowPtr& f);

// Any call-free arrow iterates in one step over an empty local space.
CallForm lift(const ArrowPtr& f, const ObjPtr& dom, const ObjPtr& cod);

// Sequential composition: the local space is a.local + a.output + b.local.
CallForm seq_nf(const CallForm& a, const CallForm& b);

// Sum: locals combine pairwise around commutativity isomorphisms.
CallForm sum_nf(const CallForm& a, const CallForm& b);

// Product: the local space is U*U' + U*Y' + Y*U', the joint result space
// distributed over the four ways the two loops can be mid-flight.
CallForm prod_nf(const CallForm& a, const CallForm& b);

// Case and pairing reduce to the sum/product forms through the codiagonal
// and the diagonal.
CallForm case_nf(const CallForm& a, const CallForm& b);
CallForm pair_nf(const CallForm& a, const CallForm& b);

// Collapses a call whose body is itself a single call: the local space is
// the outer local plus the inner one, with one twist appended to the body.
CallForm flatten_nf(const ObjPtr& input, const ObjPtr& outer_local,
                    const ObjPtr& output, const CallForm& inner);

// Rewrites an elaborated arrow of type dom -> cod into a single call of a
// call-free body, preserving semantics.
CallForm normalize(const ArrowPtr& f, const ObjPtr& dom, const ObjPtr& cod,
                   const Signature& sig);

}  // namespace impg
