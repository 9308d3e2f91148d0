#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "impg/code.hpp"
#include "impg/domcod.hpp"
#include "impg/signature.hpp"
#include "impg/syntax.hpp"

namespace impg {

enum class CompileMode { FirstSolution, Exhaustive };

// One way of instantiating an arrow at a (dom, cod) pair: the emitted code
// (pre-optimization) and the fully annotated source it corresponds to.
struct Compilation {
  CodePtr code;
  ArrowPtr elaborated;
};

// Compiles arrows against flat (dom, cod) targets by backtracking over
// sum/product list splittings. Holds the signature and a memo table; create
// one per signature.
class Compiler {
 public:
  Compiler(const Signature& sig, CompileMode mode = CompileMode::FirstSolution)
      : sig_(sig), mode_(mode) {}

  // First solution under the deterministic enumeration order, or nullopt.
  std::optional<Compilation> compile(const ArrowPtr& f, const FlatObj& dom,
                                     const FlatObj& cod);

  // All solutions (deduplicated by emitted code). Meaningful in exhaustive
  // mode; in first-solution mode the list has at most one element.
  const std::vector<Compilation>& solve(const ArrowPtr& f, const FlatObj& dom,
                                        const FlatObj& cod);

  const Signature& sig() const { return sig_; }

 private:
  std::vector<Compilation> solve_uncached(const ArrowPtr& f,
                                          const FlatObj& dom,
                                          const FlatObj& cod);

  // Memo keys mention node addresses, so every queried node is pinned for
  // the compiler's lifetime to keep addresses from being reused.
  struct MemoEntry {
    ArrowPtr pinned;
    std::vector<Compilation> solutions;
  };

  const Signature& sig_;
  CompileMode mode_;
  std::unordered_map<std::string, MemoEntry> memo_;
};

// Applies every peephole rule to fixpoint, default rules last. Optimized code
// contains no Inj1/Inj2/Proj1/Proj2/Dist4/PairIdx constructors.
CodePtr peephole(const CodePtr& c);

class CompileError : public std::runtime_error {
 public:
  CompileError(std::string def_name, const std::string& msg)
      : std::runtime_error(msg), def_name_(std::move(def_name)) {}
  const std::string& def_name() const { return def_name_; }

 private:
  std::string def_name_;
};

// Gathers the lib section into a signature and compiles each definition in
// order, earlier definitions visible to later ones. Codes are emitted
// unoptimized; apply `optimize` for the peepholed program. Throws
// CompileError naming the first definition that cannot be compiled.
CompiledProgram compile_program(const Program& p);
CompiledProgram optimize(CompiledProgram cp);

// The instantiation the compiler chose, as a fully annotated arrow. Throws
// CompileError when compilation fails.
ArrowPtr elaborate(const ArrowPtr& f, const FlatObj& dom, const FlatObj& cod,
                   const Signature& sig);

struct AmbiguityReport {
  bool ambiguous = false;
  std::vector<CodePtr> distinct_codes;  // optimized, structurally distinct
};

// Exhaustive enumeration; ambiguous iff two or more structurally distinct
// optimized codes exist.
AmbiguityReport check_ambiguous(const ArrowPtr& f, const FlatObj& dom,
                                const FlatObj& cod, const Signature& sig);

}  // namespace impg
