#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "impg/callnf.hpp"
#include "impg/compiler.hpp"
#include "impg/refeval.hpp"
#include "impg/stdlib_nat.hpp"
#include "impg/syntax.hpp"
#include "impg/typecheck.hpp"
#include "impg/vm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitUsage = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("IMPG_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (...) {
      // fall through to the built-in default
    }
  }
  return impg::kDefaultBudget;
}

int cmd_check(const std::string& file, bool exhaustive) {
  impg::Program p = impg::parse_program(read_file(file));
  impg::Diagnostics ds = impg::tc_program(
      p, exhaustive ? impg::CompileMode::Exhaustive
                    : impg::CompileMode::FirstSolution);
  for (const auto& d : ds) std::cerr << d.render() << "\n";
  return ds.empty() ? kExitOk : kExitDiagnostics;
}

int cmd_compile(const std::string& file, bool no_opt, bool dump,
                bool exhaustive) {
  impg::Program p = impg::parse_program(read_file(file));
  impg::CompiledProgram cp;
  try {
    cp = impg::compile_program(p);
  } catch (const impg::CompileError& e) {
    std::cerr << e.what() << "\n";
    return kExitDiagnostics;
  }
  if (!no_opt) cp = impg::optimize(std::move(cp));
  bool ambiguous = false;
  if (exhaustive) {
    impg::Diagnostics ds =
        impg::tc_program(p, impg::CompileMode::Exhaustive);
    for (const auto& d : ds)
      if (d.kind == impg::Diagnostic::Kind::Ambiguous) {
        std::cerr << d.render() << "\n";
        ambiguous = true;
      }
  }
  for (const auto& d : cp.defs) {
    if (dump)
      std::cout << d.name << " = " << impg::dump_code(d.code) << "\n";
    else
      std::cout << "compiled " << d.name << " : " << impg::print_obj(d.dom)
                << " --> " << impg::print_obj(d.cod) << "\n";
  }
  return ambiguous ? kExitDiagnostics : kExitOk;
}

int cmd_run(const std::string& file, const std::string& arrow,
            const std::string& data, std::uint64_t budget, bool no_opt) {
  impg::Program p = impg::parse_program(read_file(file));
  impg::Forest d = impg::parse_data(data);
  impg::RunResult r = impg::run_arrow(arrow, d, p, budget, !no_opt);
  if (!r.result) {
    for (const auto& diag : r.diags) std::cerr << diag.render() << "\n";
    return kExitDiagnostics;
  }
  std::cout << impg::print_data(*r.result) << "\n";
  return kExitOk;
}

int cmd_normalize(const std::string& file, const std::string& arrow) {
  impg::Program p = impg::parse_program(read_file(file));
  impg::CompiledProgram cp;
  try {
    cp = impg::compile_program(p);
  } catch (const impg::CompileError& e) {
    std::cerr << e.what() << "\n";
    return kExitDiagnostics;
  }
  const impg::CompiledDef* def = cp.find(arrow);
  if (!def) {
    std::cerr << "no definition named " << arrow << "\n";
    return kExitUsage;
  }
  impg::CallForm nf =
      impg::normalize(def->elaborated, def->dom, def->cod, cp.sig);
  impg::Program out;
  out.objects = p.objects;
  out.refs = p.refs;
  // Earlier definitions stay visible: the normalized body may reference them.
  for (const impg::Def& d : p.defs) {
    if (d.name == arrow) break;
    out.defs.push_back(d);
  }
  impg::Def d;
  d.name = def->name;
  d.dom = def->dom;
  d.steps.push_back({impg::as_call(nf), def->cod, {}});
  out.defs.push_back(std::move(d));
  std::cout << impg::print_program(out);
  return kExitOk;
}

int cmd_fmt(const std::string& file) {
  std::cout << impg::print_program(impg::parse_program(read_file(file)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"impg: type-check, compile, run and normalize programs over a "
               "distributive graph"};
  app.require_subcommand(1);

  std::string file, arrow, data;
  bool no_opt = false, dump = false, exhaustive = false;
  std::uint64_t budget = default_budget();

  CLI::App* check = app.add_subcommand("check", "type-check a program");
  check->add_option("file", file)->required();
  check->add_flag("--exhaustive", exhaustive,
                  "enumerate all instantiations and report ambiguity");

  CLI::App* compile = app.add_subcommand("compile", "compile definitions");
  compile->add_option("file", file)->required();
  compile->add_flag("--no-opt", no_opt, "skip the peephole optimizer");
  compile->add_flag("--dump", dump, "print the code of each definition");
  compile->add_flag("--exhaustive", exhaustive,
                    "enumerate all instantiations and report ambiguity");

  CLI::App* run = app.add_subcommand("run", "run an arrow on data");
  run->add_option("file", file)->required();
  run->add_option("--arrow", arrow)->required();
  run->add_option("--data", data)->required();
  run->add_option("--budget", budget, "iteration budget");
  run->add_flag("--no-opt", no_opt, "run unoptimized code");

  CLI::App* norm = app.add_subcommand(
      "normalize", "rewrite a definition into a single iteration");
  norm->add_option("file", file)->required();
  norm->add_option("--arrow", arrow)->required();

  CLI::App* fmt = app.add_subcommand("fmt", "pretty-print a program");
  fmt->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(file, exhaustive);
    if (app.got_subcommand(compile))
      return cmd_compile(file, no_opt, dump, exhaustive);
    if (app.got_subcommand(run)) return cmd_run(file, arrow, data, budget, no_opt);
    if (app.got_subcommand(norm)) return cmd_normalize(file, arrow);
    if (app.got_subcommand(fmt)) return cmd_fmt(file);
  } catch (const impg::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitDiagnostics;
  } catch (const impg::BudgetExhausted& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  } catch (const impg::VmError& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  } catch (const impg::StdlibError& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  } catch (const impg::ForestError& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
