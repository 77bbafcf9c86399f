#pragma once

#include <algorithm>
#include <vector>

#include "graph.hpp"

namespace testgraphs {

using vg::Graph;
using vg::GraphBuilder;
using vg::VertexKind;

inline Graph theta() {
  GraphBuilder b;
  const int v = b.add_vertex(VertexKind::Normal), w = b.add_vertex(VertexKind::Normal);
  for (int i = 0; i < 3; ++i) b.add_edge(v, w);
  return std::move(b).build();
}

// Copy of g with the cyclic order at vertex `rev` reversed.
inline Graph reverse_vertex(const Graph& g, int rev) {
  GraphBuilder b;
  for (int v = 0; v < g.num_vertices(); ++v) b.add_vertex(g.kind(v));
  for (int e = 0; e < g.num_edges(); ++e) b.add_edge(g.vertex_of(2 * e), g.vertex_of(2 * e + 1), g.edge_kind(e));
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<int> d(g.darts(v).begin(), g.darts(v).end());
    if (v == rev) std::reverse(d.begin(), d.end());
    b.set_rotation(v, d);
  }
  return std::move(b).build();
}

// An n-ladder whose four ends are legs: degree (n+2, 4).
inline Graph leg_ladder(int n) {
  GraphBuilder b;
  std::vector<int> a(n), c(n);
  for (int i = 0; i < n; ++i) {
    a[i] = b.add_vertex(VertexKind::Normal);
    c[i] = b.add_vertex(VertexKind::Normal);
  }
  for (int i = 0; i < n; ++i) b.add_edge(a[i], c[i]);
  for (int i = 0; i + 1 < n; ++i) {
    b.add_edge(a[i], a[i + 1]);
    b.add_edge(c[i], c[i + 1]);
  }
  for (int v : {a[0], c[0], a[n - 1], c[n - 1]}) b.add_edge(v, b.add_vertex(VertexKind::Univalent));
  return std::move(b).build();
}

}  // namespace testgraphs
