#include "impg/vm.hpp"

#include <utility>
#include <vector>

#include "impg/compiler.hpp"
#include "impg/stdlib_nat.hpp"
#include "impg/syntax.hpp"

namespace impg {

namespace {

struct Frame {
  enum class Kind { Run, Swap, Concat, IterCheck };
  Kind kind;
  CodePtr code;  // Run: code to execute; IterCheck: the Iter node
};

[[noreturn]] void ill_typed(const char* what) {
  throw VmError(std::string("ill-typed data reached ") + what);
}

void spend(std::uint64_t& budget) {
  if (budget == 0) throw BudgetExhausted();
  --budget;
}

Forest right_del(Forest d, std::uint64_t n, const char* what) {
  if (n > d.size()) ill_typed(what);
  d.erase(d.end() - static_cast<std::ptrdiff_t>(n), d.end());
  return d;
}

Forest left_del(Forest d, std::uint64_t n, const char* what) {
  if (n > d.size()) ill_typed(what);
  d.erase(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n));
  return d;
}

// Distributivity on the last tree of the forest; q/q2 are the sum lengths of
// the two summand groups, n the sum length of the first codomain summand.
Forest dist3(Forest d, std::uint64_t q, std::uint64_t q2, std::uint64_t n) {
  if (d.size() < 2 || d.back().is_leaf()) ill_typed("DIST");
  Tree last = d.back();
  std::uint64_t m = last.tag();
  if (m < q) {
    if (q != 1) return {mk_node(0, std::move(d))};
    // q == 1 forces m == 0: splice the children into the tuple.
    d.pop_back();
    return {mk_node(0, concat(std::move(d), last.children()))};
  }
  if (q2 != 1) {
    d.pop_back();
    d.push_back(mk_node(m - q, last.children()));
    return {mk_node(n, std::move(d))};
  }
  if (m != q) ill_typed("DIST");
  d.pop_back();
  return {mk_node(n, concat(std::move(d), last.children()))};
}

Forest run_op(const BasicOp& op, Forest d) {
  using K = BasicOp::Kind;
  switch (op.kind) {
    case K::Nop:
      return d;
    case K::Init:
      throw VmError("initial map executed (no data inhabits its domain)");
    case K::Term:
      return {};
    case K::Tree:
      return {mk_node(op.a, std::move(d))};
    case K::RightDel:
      return right_del(std::move(d), op.a, "RIGHTDEL");
    case K::LeftDel:
      return left_del(std::move(d), op.a, "LEFTDEL");
    case K::Dist3:
      return dist3(std::move(d), op.a, op.b, op.c);
    case K::Apply:
      return apply_library(op.name, d);
    // Pre-optimization forms mirror what the peephole rules turn them into.
    case K::Inj1:
      if (op.a == 0) throw VmError("initial injection executed");
      if (op.b == 0) return d;
      return {mk_node(0, std::move(d))};
    case K::Inj2:
      if (op.b == 0) throw VmError("initial injection executed");
      if (op.a == 0) return d;
      return {mk_node(op.a, std::move(d))};
    case K::Proj1:
      if (op.a == 0) return {};
      if (op.b == 0) return d;
      return right_del(std::move(d), op.b, "PROJ1");
    case K::Proj2:
      if (op.b == 0) return {};
      if (op.a == 0) return d;
      return left_del(std::move(d), op.a, "PROJ2");
    case K::Dist4:
      if (op.a == 0) return d;
      if (op.b == 0) return {mk_node(1, std::move(d))};
      if (op.c == 0) return {mk_node(0, std::move(d))};
      return dist3(std::move(d), op.b, op.c, op.d);
  }
  throw VmError("unknown instruction");
}

}  // namespace

const CodePtr& code_of(const std::string& name, const CompiledProgram& prog) {
  const CompiledDef* d = prog.find(name);
  if (!d) throw VmError("unknown compiled arrow " + name);
  return d->code;
}

Forest exec(const CodePtr& c, Forest input, const CompiledProgram& prog,
            std::uint64_t budget) {
  std::vector<Frame> control;
  std::vector<Forest> data;
  control.push_back({Frame::Kind::Run, c});
  data.push_back(std::move(input));

  while (!control.empty()) {
    Frame fr = std::move(control.back());
    control.pop_back();

    switch (fr.kind) {
      case Frame::Kind::Swap: {
        std::swap(data[data.size() - 1], data[data.size() - 2]);
        continue;
      }
      case Frame::Kind::Concat: {
        Forest r = std::move(data.back());
        data.pop_back();
        Forest l = std::move(data.back());
        data.pop_back();
        data.push_back(concat(std::move(l), r));
        continue;
      }
      case Frame::Kind::IterCheck: {
        const Code& it = *fr.code;
        Forest r = std::move(data.back());
        data.pop_back();
        if (r.size() != 1 || r.front().is_leaf())
          ill_typed("ITER (loop body produced an untagged forest)");
        std::uint64_t q = r.front().tag();
        const Forest& rest = r.front().children();
        if (q < it.n) {
          // Continue: retag into the loop's state space and re-enter; the
          // leading 0-tag wrap collapses on already tagged data.
          spend(budget);
          control.push_back({Frame::Kind::IterCheck, fr.code});
          control.push_back({Frame::Kind::Run, it.a});
          data.push_back({mk_node(0, {mk_node(q + it.m, rest)})});
        } else if (it.k != 1) {
          data.push_back({mk_node(q - it.n, rest)});
        } else {
          if (q != it.n) ill_typed("ITER (result tag out of range)");
          data.push_back(rest);
        }
        continue;
      }
      case Frame::Kind::Run:
        break;
    }

    const Code& code = *fr.code;
    switch (code.kind) {
      case Code::Kind::Op: {
        Forest d = std::move(data.back());
        data.pop_back();
        data.push_back(run_op(code.op, std::move(d)));
        break;
      }
      case Code::Kind::CompRef: {
        spend(budget);
        control.push_back({Frame::Kind::Run, code_of(code.name, prog)});
        break;
      }
      case Code::Kind::Seq: {
        control.push_back({Frame::Kind::Run, code.b});
        control.push_back({Frame::Kind::Run, code.a});
        break;
      }
      case Code::Kind::PairC:
      case Code::Kind::PairIdx: {
        if (code.kind == Code::Kind::PairIdx && (code.m == 0 || code.n == 0)) {
          control.push_back(
              {Frame::Kind::Run, code.m == 0 ? code.b : code.a});
          break;
        }
        Forest d = data.back();
        data.push_back(std::move(d));  // one copy for each side
        control.push_back({Frame::Kind::Concat, nullptr});
        control.push_back({Frame::Kind::Run, code.b});
        control.push_back({Frame::Kind::Swap, nullptr});
        control.push_back({Frame::Kind::Run, code.a});
        break;
      }
      case Code::Kind::CaseC: {
        if (code.m == 0 || code.n == 0) {
          // Degenerate split: one side is empty, so there is no dispatch.
          control.push_back({Frame::Kind::Run, code.m == 0 ? code.b : code.a});
          break;
        }
        Forest d = std::move(data.back());
        data.pop_back();
        if (d.size() != 1 || d.front().is_leaf())
          ill_typed("CASE (untagged forest)");
        std::uint64_t nt = d.front().tag();
        const Forest& rest = d.front().children();
        std::uint64_t p = code.m, q = code.n;
        if (nt < p) {
          if (p != 1) {
            data.push_back(std::move(d));
          } else {
            // p == 1 forces nt == 0: unwrap.
            data.push_back(rest);
          }
          control.push_back({Frame::Kind::Run, code.a});
        } else {
          if (q != 1) {
            data.push_back({mk_node(nt - p, rest)});
          } else {
            if (nt != p) ill_typed("CASE (tag out of range)");
            data.push_back(rest);
          }
          control.push_back({Frame::Kind::Run, code.b});
        }
        break;
      }
      case Code::Kind::Iter: {
        if (code.m == 0)
          throw VmError("initial iteration executed");
        Forest d = std::move(data.back());
        data.pop_back();
        if (code.n == 0) {
          // Degenerate loop with no local state: the body runs once.
          control.push_back({Frame::Kind::Run, code.a});
          data.push_back(std::move(d));
          break;
        }
        spend(budget);
        control.push_back({Frame::Kind::IterCheck, fr.code});
        control.push_back({Frame::Kind::Run, code.a});
        data.push_back({mk_node(0, std::move(d))});
        break;
      }
    }
  }

  return std::move(data.back());
}

RunResult run_arrow(const std::string& name, const Forest& d, const Program& p,
                    std::uint64_t budget, bool opt) {
  RunResult out;
  CompiledProgram cp;
  try {
    cp = compile_program(p);
  } catch (const CompileError&) {
    out.diags = tc_program(p);
    if (out.diags.empty()) {
      // The compiler is stricter than the checker only in pathological
      // cases; surface the failure as a not-from-to on the offending def.
      out.diags.push_back(diag_not_from_to(arr_basic(name), obj_initial(),
                                           obj_initial()));
    }
    return out;
  }
  if (opt) cp = optimize(std::move(cp));
  out.result = exec(mk_compref(name), d, cp, budget);
  return out;
}

}  // namespace impg
