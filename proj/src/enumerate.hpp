#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace vg {

struct EdgeListGraph {
  std::vector<VertexKind> kinds;
  std::vector<std::pair<int, int>> edges;
  Graph build() const;
};

// Generates connected loopless uni-trivalent multigraphs up to isomorphism.
// Every class is reached from smaller ones by inserting a leg on an edge,
// inserting a bubble on a leg edge, or (for closed graphs) joining two legs.
class DiagramEnumerator {
 public:
  explicit DiagramEnumerator(std::size_t capacity = 10'000'000) : capacity_(capacity) {}

  // All classes with `trivalent` trivalent and `legs` univalent vertices,
  // AS-degenerate ones included; sorted canonical codes.
  const std::vector<std::string>& graphs(int trivalent, int legs);

  // Non-degenerate classes of degree m with u legs: the basis of the free
  // space before relations.
  std::vector<std::string> diagrams(int m, int u);

 private:
  std::size_t capacity_;
  std::map<std::pair<int, int>, std::vector<std::string>> cache_;
};

}  // namespace vg
