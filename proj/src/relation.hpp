#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "graph.hpp"
#include "lincomb.hpp"

namespace vg {

// A local picture: internal vertices with ordered slots ("stubs") and
// numbered clipped ends. Each stub is joined to another stub (an internal
// edge) or to one end. Two ends may also be joined directly (a strand that
// passes through the region). Ends are 0-based here and 1-based in files.
struct Fragment {
  int ends = 0;
  std::vector<VertexKind> kinds;
  std::vector<std::vector<int>> slots;  // cyclic order for normal vertices
  std::vector<int> stub_vertex;
  std::vector<int> link;  // partner stub, or -(k+1) for end k
  std::vector<EdgeKind> stub_kind;
  std::vector<int> end_stub;  // stub holding end k, or -1 for a pass-through
  std::vector<int> end_pass;  // partner end of a pass-through, or -1
  std::vector<EdgeKind> end_kind;

  int num_vertices() const { return static_cast<int>(kinds.size()); }
  int num_stubs() const { return static_cast<int>(link.size()); }
};

struct Embedding {
  std::vector<int> vertex;     // fragment vertex -> host vertex
  std::vector<int> stub_dart;  // fragment stub -> host dart
};

// Injective embeddings of F into g. With `oriented`, the cyclic order of every
// normal vertex must agree with the host's; otherwise any slot order is
// accepted (the substituted terms then carry their own AS signs). Fragments
// whose first vertex set is not reached by internal edges are seeded from
// every host vertex. Output order is deterministic.
std::vector<Embedding> match(const Graph& g, const Fragment& f, bool oriented = true);

// Replaces the image of `pattern` under `emb` by `replacement` (same ends).
// Returns nothing when the result would not be a connected graph.
std::optional<Graph> substitute(const Graph& g, const Fragment& pattern, const Embedding& emb,
                                const Fragment& replacement);

struct SchemaTerm {
  mpq_class weight;
  Fragment fragment;
};

// One relation (or, with a ladder parameter or a built-in generator, a
// family of relations). Loaded from the schema text format.
class RelationSchema {
 public:
  std::string name;
  std::string provenance;
  std::string generator;  // built-in family; empty for picture schemas
  int ends = 0;
  // Match the first term only where the host's cyclic orders agree with it.
  // Valid for relations that are closed under reversing a vertex, such as IHX.
  bool oriented = false;
  // Embeddings with the same image give the same relation; keep one.
  bool symmetric = false;
  std::uint64_t digest() const { return digest_; }

  bool parametric() const { return param_parity_ >= 0; }
  // Parameter values of the family whose first fragment has at most
  // `max_vertices` vertices; {0} for a fixed schema.
  std::vector<int> parameter_values(int max_vertices) const;
  std::vector<SchemaTerm> instantiate(int n = 0) const;

  struct Line {
    int number;
    std::vector<std::string> tokens;
  };
  struct TermSource {
    mpq_class weight;
    std::vector<Line> lines;
  };

 private:
  friend std::vector<RelationSchema> parse_schemas(const std::string& text);
  int param_parity_ = -1;  // -1 none, 0 even, 1 odd, 2 any
  int param_min_ = 2;
  std::vector<TermSource> sources_;
  std::uint64_t digest_ = 0;
  mutable std::map<int, std::vector<SchemaTerm>> cache_;
};

std::vector<RelationSchema> parse_schemas(const std::string& text);
// A file, or every file with the given extension in a directory.
std::vector<RelationSchema> load_schemas(const std::string& path, const std::string& extension = ".schema");
const RelationSchema* find_schema(const std::vector<RelationSchema>& set, const std::string& name);

struct RelationOptions {
  std::size_t capacity = 50'000'000;  // bound on embeddings visited
};

// Relation vectors in the span of degree-(m,u) diagrams (hosts include the
// AS-degenerate classes). Vectors are monic, deduplicated and sorted.
std::vector<LinearCombination> relation_vectors(DiagramEnumerator& en, int m, int u,
                                                const std::vector<const RelationSchema*>& schemas,
                                                const RelationOptions& opt = {});

// The same for a single host graph; used for Feynman graphs too.
void host_relations(const Graph& g, const RelationSchema& s, std::vector<LinearCombination>& out);

// Built-in family "lambda": for a 3-edge cut whose one side is a connected,
// leg-free piece X with at least three vertices, the sum over the six ways of
// reattaching X weighted by the permutation sign. These span the image of
// positive-degree elements of Lambda acting at a vertex.
void lambda_relations(const Graph& g, std::vector<LinearCombination>& out);

// Graph rebuilt with a new pairing of darts: every dart id of g is a stub,
// `pairs` lists the new edges (all darts used exactly once) with their kinds.
std::optional<Graph> rewire(const Graph& g, const std::vector<std::pair<int, int>>& pairs,
                            const std::vector<EdgeKind>& kinds);

}  // namespace vg
