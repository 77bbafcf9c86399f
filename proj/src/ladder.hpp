#pragma once

#include <array>
#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "graph.hpp"
#include "linalg.hpp"
#include "relation.hpp"

namespace vg {

// An n-ladder: rails a_1..a_n and b_1..b_n, rung i joining a_i and b_i, and
// four end edges leaving a_1, b_1, a_n, b_n, each with exactly one endpoint
// in the ladder. The 2n vertices are distinct and trivalent.
struct Ladder {
  int rungs = 0;
  std::vector<int> a, b;
  std::vector<int> rung_dart_a;  // dart of rung i at a_i
  std::vector<int> rail_a, rail_b;  // dart at a_i (b_i) toward a_{i+1} (b_{i+1}); n-1 entries
  std::array<int, 4> end_dart{};  // darts at a_1, b_1, a_n, b_n of the end edges
  std::vector<int> edges;  // 3n+2 edge ids including the ends, sorted
};

struct Delta {
  int f = 0, o = 0, e = 0;
  friend auto operator<=>(const Delta&, const Delta&) = default;
};
std::string to_string(const Delta& d);

// Maximal ladders that share a vertex with another maximal ladder (rings of
// squares such as prisms, where a ladder closes on itself) are set aside and
// not counted; the counted ones are pairwise vertex-disjoint.
struct LadderReport {
  std::vector<Ladder> maximal;  // counted, sorted by edge set
  std::vector<Ladder> overlapping;
  std::map<int, int> counts;    // rung count -> number of maximal ladders
  Delta delta;
};

// Every ladder of g (as edge sets, each once).
std::vector<Ladder> all_ladders(const Graph& g);
LadderReport ladder_report(const Graph& g);
Delta delta(const Graph& g);

// The four inequalities on (f,o,e) for degree (m,u).
bool admissible(const Delta& d, int m, int u);
// All admissible triples, increasing.
std::vector<Delta> t_set(int m, int u);

struct SignedGraph {
  Graph graph;
  int sign = 1;
};

// Orientation sign of the ladder vertices against the planar drawing
// a_i (right, left, rung), b_i (right, rung, left).
int planar_sign(const Graph& g, const Ladder& l);

// Removes rungs 2 and 3 of a ladder with at least four rungs.
SignedGraph reduce_square(const Graph& g, const Ladder& l);
// Adds two rungs between rungs 1 and 2.
SignedGraph insert_square(const Graph& g, const Ladder& l);
// s: inserts a square into the first maximal ladder.
SignedGraph add_square(const Graph& g);

// Reduces free squares until every ladder has two or three rungs. `pick`
// chooses among the reducible ladders (index into the candidate list);
// the default takes the first.
SignedGraph complete_reduction(const Graph& g, const std::function<std::size_t(std::size_t)>& pick = {});

struct FiltrationRow {
  Delta index;
  std::size_t diagrams = 0;  // diagrams with exactly this delta
  std::size_t dim_f = 0, dim_g = 0;
};

// dim F(t) and dim G(t) for every t in T(m,u), from one block elimination.
std::vector<FiltrationRow> filtration_dims(DiagramEnumerator& en, int m, int u,
                                           const std::vector<const RelationSchema*>& schemas,
                                           const RankOptions& ropt = {}, const RelationOptions& opt = {});

}  // namespace vg
