#pragma once

#include <string>
#include <vector>

#include "graph.hpp"

namespace vg {

// Canonical code of the underlying colored multigraph plus the orientation
// sign of the input relative to the code's standard orientation. sign == 0
// marks an AS-degenerate graph: some automorphism reverses an odd number of
// normal-vertex cyclic orders, so the graph equals its own negative.
struct SignedCanonical {
  std::string code;
  int sign = 0;

  bool zero() const { return sign == 0; }
  friend bool operator==(const SignedCanonical&, const SignedCanonical&) = default;
};

SignedCanonical canonicalize(const Graph& g);

// Graph whose canonical code is `code`, carrying the standard orientation
// (canonicalize(decode(c)) == {c, +1} whenever c is non-degenerate).
Graph decode(const std::string& code);

std::string to_hex(const std::string& code);
std::string from_hex(const std::string& hex);

// Vertex automorphisms found by the canonical search (a generating set) with
// their orientation parities.
struct AutomorphismInfo {
  std::vector<std::vector<int>> generators;
  std::vector<int> parity;
};
AutomorphismInfo automorphisms(const Graph& g);

}  // namespace vg
