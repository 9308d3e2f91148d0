#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "impg/forest.hpp"
#include "impg/signature.hpp"

namespace impg {

// A basic-arrow library: datum literal parsing plus the semantics of its
// arrows on forests. Libraries register in a fixed table; Nat is the only
// one shipped.
struct Library {
  std::string name;
  Signature signature;
  std::function<std::optional<BasicDatum>(const std::string&)> parse_datum;
  std::function<std::string(const BasicDatum&)> print_datum;
  // Returns nothing when the arrow name is not provided by this library.
  std::function<std::optional<Forest>(const std::string&, const Forest&)> apply;
};

const std::vector<Library>& library_registry();

// The natural-number library: s : I + N -> N, p : N -> I + N, plus / minus /
// times : N * N -> N, gt / ge / eq : N * N -> I + I (first summand false).
Signature nat_signature();

class StdlibError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies a Nat arrow to a forest that structurally matches its domain.
// Throws StdlibError on an unknown name or malformed forest.
Forest apply_nat(const std::string& name, const Forest& d);

// Dispatch through the registry; used by the machine for Apply instructions.
Forest apply_library(const std::string& name, const Forest& d);
bool library_provides(const std::string& name);

}  // namespace impg
