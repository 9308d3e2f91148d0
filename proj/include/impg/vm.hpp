#pragma once

#include <cstdint>
#include <stdexcept>

#include "impg/code.hpp"
#include "impg/forest.hpp"
#include "impg/typecheck.hpp"

namespace impg {

class VmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExhausted : public VmError {
 public:
  BudgetExhausted() : VmError("iteration budget exhausted") {}
};

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

// Executes code on a normalized forest. The budget counts loop-body
// applications across all nested iterations plus compiled-arrow expansions;
// exhausting it throws BudgetExhausted. Runs on an explicit work list, so
// deep code cannot overflow the host stack. Accepts unoptimized code too.
Forest exec(const CodePtr& c, Forest d, const CompiledProgram& prog,
            std::uint64_t budget = kDefaultBudget);

const CodePtr& code_of(const std::string& name, const CompiledProgram& prog);

struct RunResult {
  std::optional<Forest> result;  // set on success
  Diagnostics diags;             // set when compilation failed
};

// Compiles the program and runs the named arrow; when compilation fails,
// falls back to the type-checker and returns its diagnostics instead.
// Runtime faults (budget, ill-typed data, unknown arrow) still throw.
RunResult run_arrow(const std::string& name, const Forest& d, const Program& p,
                    std::uint64_t budget = kDefaultBudget, bool opt = true);

}  // namespace impg
