#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace impg {

// Unbounded natural number; the datum kind of the Nat standard library.
using Nat = boost::multiprecision::cpp_int;

inline std::string to_string(const Nat& n) { return n.str(); }

// Parses an unsigned decimal literal. Rejects anything else.
inline std::optional<Nat> nat_from_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  Nat n = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + (c - '0');
  }
  return n;
}

}  // namespace impg
