#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vg {

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line), detail_(what) {}
  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  int line_;
  std::string detail_;
};

enum class VertexKind : std::uint8_t { Univalent = 0, Normal = 1, Photon = 2, Tetra = 3 };
enum class EdgeKind : std::uint8_t { Normal = 0, Photon = 1 };

int valency(VertexKind k);
char kind_letter(VertexKind k);

// Dart-based multigraph. Edge e owns darts 2e and 2e+1; the dart list of a
// Normal vertex is its cyclic order. Values are immutable once built.
class Graph {
 public:
  Graph() = default;

  int num_vertices() const { return static_cast<int>(vkind_.size()); }
  int num_edges() const { return static_cast<int>(ekind_.size()); }
  int num_darts() const { return 2 * num_edges(); }

  VertexKind kind(int v) const { return vkind_[v]; }
  EdgeKind edge_kind(int e) const { return ekind_[e]; }
  std::span<const int> darts(int v) const { return vdarts_[v]; }
  int vertex_of(int dart) const { return dvert_[dart]; }
  static int partner(int dart) { return dart ^ 1; }
  static int edge_of(int dart) { return dart >> 1; }
  int other_end(int dart) const { return dvert_[dart ^ 1]; }

  int count(VertexKind k) const;
  int count(EdgeKind k) const;
  bool is_connected() const;
  bool has_loop() const;

  // Diagram bookkeeping: degree is half the vertex count.
  int degree() const { return num_vertices() / 2; }
  int legs() const { return count(VertexKind::Univalent); }
  bool is_diagram() const;  // only univalent/normal vertices and normal edges

  friend class GraphBuilder;

 private:
  std::vector<VertexKind> vkind_;
  std::vector<std::vector<int>> vdarts_;
  std::vector<int> dvert_;
  std::vector<EdgeKind> ekind_;
};

class GraphBuilder {
 public:
  int add_vertex(VertexKind k);
  // Returns the edge id; dart 2e sits at v, dart 2e+1 at w.
  int add_edge(int v, int w, EdgeKind k = EdgeKind::Normal);
  // Replaces the dart order of v; must be a permutation of its current darts.
  void set_rotation(int v, std::vector<int> darts);
  int num_vertices() const { return static_cast<int>(g_.vkind_.size()); }
  // Validates valencies, photon-edge rules and connectivity.
  Graph build(bool require_connected = true) &&;
  Graph build(bool require_connected = true) const&;

 private:
  Graph g_;
};

// Rebuilds g with vertex `order[i]` becoming vertex i and edges renumbered in
// first-seen order; dart cyclic orders are carried along.
Graph relabel(const Graph& g, std::span<const int> order);

// Graph whose vertex v carries the stubs `stubs[v]` in cyclic order, stubs
// being joined by `pairs`. Stub keys are arbitrary integers below `nkeys`.
// Returns nothing when the result is disconnected.
struct StubPair {
  int a, b;
  EdgeKind kind = EdgeKind::Normal;
};
std::optional<Graph> assemble(const std::vector<VertexKind>& kinds, const std::vector<std::vector<int>>& stubs,
                              const std::vector<StubPair>& pairs, int nkeys);

// Text exchange format (see docs/formats.md).
std::string to_text(const Graph& g);
Graph parse_graph(const std::string& text);
std::vector<Graph> parse_graphs(const std::string& text);

}  // namespace vg
