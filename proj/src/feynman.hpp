#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "graph.hpp"
#include "ladder.hpp"
#include "linalg.hpp"
#include "lincomb.hpp"
#include "relation.hpp"

namespace vg {

// (m,u,p,q): degree, legs, photon edges, tetravalent vertices.
struct FeynmanDegree {
  int m = 0, u = 0, p = 0, q = 0;
  int normal() const { return 2 * m - u - 6 * p - 4 * q; }
  friend auto operator<=>(const FeynmanDegree&, const FeynmanDegree&) = default;
};
std::string to_string(const FeynmanDegree& d);

FeynmanDegree feynman_degree(const Graph& g);

// Feynman graphs of degree (m,u,p,q) are read off the diagrams of degree
// (m,u): every choice of vertex-disjoint 3-ladders and squares is contracted
// to photon edges and tetravalent vertices. Graphs with a self-loop are not
// produced (they are forbidden anyway).
class FeynmanEnumerator {
 public:
  explicit FeynmanEnumerator(DiagramEnumerator& en, std::size_t capacity = 20'000'000) : en_(en), capacity_(capacity) {}

  // All classes, AS-degenerate ones included; sorted canonical codes.
  const std::vector<std::string>& graphs(const FeynmanDegree& d);
  // Non-degenerate classes: the basis of C(m,u,p,q).
  std::vector<std::string> basis(const FeynmanDegree& d);

 private:
  void fill(int m, int u);
  DiagramEnumerator& en_;
  std::size_t capacity_;
  std::map<FeynmanDegree, std::vector<std::string>> cache_;
};

// Replaces the given ladders of a diagram: 3-ladders by photon edges, squares
// by tetravalent vertices. The ladders must be vertex-disjoint.
Graph contract(const Graph& g, const std::vector<Ladder>& photons, const std::vector<Ladder>& squares);

// r: photon edges become 3-ladders and tetravalent vertices squares, drawn
// planar with the ends taken in the vertex's dart order (a_1, b_1 at the
// first photon end or the first two tetravalent darts).
Graph r_map(const Graph& g);
// s: a square inserted into the first counted maximal ladder.
SignedGraph s_map(const Graph& d);
// phi_f = s^f o r, canonicalized. Throws PreconditionError unless
// (f,p,q) lies in T(m+2f,u).
LinearCombination phi(int f, const Graph& g);

// Cycle rules of the Feynman graph quotient: self-loops, double edges (for
// m > 2), triangles, and the 4- and 5-cycle patterns loaded from files.
class CycleRules {
 public:
  CycleRules() = default;
  explicit CycleRules(std::vector<RelationSchema> patterns) : patterns_(std::move(patterns)) {}
  static CycleRules load(const std::string& path);

  // Name of the first rule that applies ("loop", "double", "triangle" or a
  // pattern name); empty when g is allowed.
  std::string violation(const Graph& g, int m) const;
  bool forbidden(const Graph& g, int m) const { return !violation(g, m).empty(); }
  const std::vector<RelationSchema>& patterns() const { return patterns_; }

 private:
  std::vector<RelationSchema> patterns_;
};

struct MuResult {
  std::size_t graphs = 0;   // non-degenerate classes
  std::size_t allowed = 0;  // of which not forbidden
  std::size_t relations = 0;
  std::size_t rank = 0;
  std::size_t value = 0;
};

// dim C(m,u,o,e) modulo the forbidden graphs and the given relations.
MuResult mu(FeynmanEnumerator& fe, const FeynmanDegree& d, const std::vector<const RelationSchema*>& relations,
            const CycleRules& rules, const RankOptions& ropt = {}, const RelationOptions& opt = {});

}  // namespace vg
