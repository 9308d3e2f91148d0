#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "impg/syntax.hpp"

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout and stderr interleaved
};

CliResult cli(const std::string& args) {
  std::string cmd = std::string(IMPG_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string prog(const std::string& name) {
  return std::string(IMPG_PROGRAMS_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = "/tmp/impg_cli_" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("run computes factorial") {
  CliResult r = cli("run " + prog("fact.imp") + " --arrow fact --data 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "120\n");
}

TEST_CASE("run prints forests in the data literal grammar") {
  std::string file = write_temp(
      "pred.imp",
      "obj N; lib p : N --> I + N; def f : N --p--> I + N .");
  CHECK(cli("run " + file + " --arrow f --data 4").output == "<1, 3>\n");
  CHECK(cli("run " + file + " --arrow f --data 0").output == "<0, >\n");
}

TEST_CASE("check reports the duplicate object diagnostic") {
  std::string file =
      write_temp("dup.imp", "obj N, N; lib ; def f : N --id--> N .");
  CliResult r = cli("check " + file);
  CHECK(r.exit_code == 1);
  CHECK(r.output == "object name N already used\n");
}

TEST_CASE("budget exhaustion exits with the runtime code") {
  CliResult r =
      cli("run " + prog("fact.imp") + " --arrow fact --data 30 --budget 10");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("budget") != std::string::npos);
}

TEST_CASE("usage errors exit with code 3") {
  CHECK(cli("frobnicate").exit_code == 3);
  CHECK(cli("run").exit_code == 3);
}

TEST_CASE("corpus files pass check, except the negative fixtures") {
  for (const char* f : {"fact.imp", "add.imp", "primrec.imp", "minim.imp",
                        "nested_call.imp", "twist_ambiguous.imp"}) {
    CliResult r = cli("check " + prog(f));
    CHECK_MESSAGE(r.exit_code == 0, f, ": ", r.output);
  }
  CliResult bad = cli("check " + prog("bad_compose.imp"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.output ==
        "arrow proj_1 ; inj_1 is not from X * Z to X + Y\n");
  CliResult tw = cli("check " + prog("twist_ambiguous.imp") + " --exhaustive");
  CHECK(tw.exit_code == 1);
  CHECK(tw.output == "arrow inj_2 | inj_1 is ambiguous\n");
}

TEST_CASE("fmt is idempotent on the corpus") {
  for (const char* f : {"fact.imp", "add.imp", "primrec.imp", "minim.imp",
                        "nested_call.imp", "twist_ambiguous.imp",
                        "bad_compose.imp"}) {
    CliResult once = cli("fmt " + prog(f));
    REQUIRE(once.exit_code == 0);
    std::string tmp = write_temp("fmt.imp", once.output);
    CliResult twice = cli("fmt " + tmp);
    CHECK(once.output == twice.output);
  }
}

TEST_CASE("normalize emits a runnable single-call program") {
  CliResult norm = cli("normalize " + prog("fact.imp") + " --arrow fact");
  REQUIRE(norm.exit_code == 0);
  std::string tmp = write_temp("fact_nf.imp", norm.output);
  CHECK(cli("check " + tmp).exit_code == 0);
  CHECK(cli("run " + tmp + " --arrow fact --data 6").output == "720\n");

  CliResult nested = cli("normalize " + prog("nested_call.imp") +
                         " --arrow nested");
  REQUIRE(nested.exit_code == 0);
  std::string tmp2 = write_temp("nested_nf.imp", nested.output);
  for (const char* d : {"0", "3", "9"})
    CHECK(cli("run " + tmp2 + " --arrow nested --data " + d).output == "0\n");
}

TEST_CASE("compile --dump is stable and complete") {
  CliResult r = cli("compile " + prog("add.imp") + " --dump");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("succ = (SEQ (TREE 1) (APPLY s))") != std::string::npos);
  CHECK(r.output.find("(ITER ") != std::string::npos);
  // Unoptimized dumps still show the pre-optimization constructors.
  CliResult raw = cli("compile " + prog("add.imp") + " --dump --no-opt");
  CHECK(raw.output.find("(INJ2 ") != std::string::npos);
}

TEST_CASE("run falls back to diagnostics on an ill-typed program") {
  std::string file = write_temp(
      "ill.imp", "obj N; lib s : I + N --> N; def f : N --s--> N .");
  CliResult r = cli("run " + file + " --arrow f --data 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output == "arrow s is not from N to N\n");
}

TEST_CASE("parse/print round trip on the whole corpus") {
  for (const char* f : {"fact.imp", "add.imp", "primrec.imp", "minim.imp",
                        "nested_call.imp", "twist_ambiguous.imp",
                        "bad_compose.imp"}) {
    std::ifstream in(prog(f));
    std::ostringstream ss;
    ss << in.rdbuf();
    impg::Program p = impg::parse_program(ss.str());
    impg::Program q = impg::parse_program(impg::print_program(p));
    CHECK_MESSAGE(impg::program_equal(p, q), f);
  }
}

TEST_CASE("environment variable sets the default budget") {
  std::string cmd = "IMPG_BUDGET=3 " + std::string(IMPG_CLI_PATH) + " run " +
                    prog("fact.imp") + " --arrow fact --data 30 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[1024];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 2);
  CHECK(out.find("budget") != std::string::npos);
}
