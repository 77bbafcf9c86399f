#include "enumerate.hpp"

#include <algorithm>
#include <unordered_set>

#include "canon.hpp"

namespace vg {

Graph EdgeListGraph::build() const {
  GraphBuilder b;
  for (auto k : kinds) b.add_vertex(k);
  for (auto [x, y] : edges) b.add_edge(x, y);
  return std::move(b).build(false);
}

namespace {

EdgeListGraph to_edge_list(const Graph& g) {
  EdgeListGraph el;
  for (int v = 0; v < g.num_vertices(); ++v) el.kinds.push_back(g.kind(v));
  for (int e = 0; e < g.num_edges(); ++e) el.edges.emplace_back(g.vertex_of(2 * e), g.vertex_of(2 * e + 1));
  return el;
}

class CodeSet {
 public:
  CodeSet(std::size_t cap, int t, int u) : cap_(cap), t_(t), u_(u) {}
  void add(const EdgeListGraph& el) {
    auto code = canonicalize(el.build()).code;
    if (set_.insert(std::move(code)).second && set_.size() > cap_)
      throw CapacityError("enumeration of graphs with " + std::to_string(t_) + " trivalent and " + std::to_string(u_) +
                          " univalent vertices exceeds the limit of " + std::to_string(cap_) + " classes");
  }
  std::vector<std::string> sorted() && {
    std::vector<std::string> v(std::make_move_iterator(set_.begin()), std::make_move_iterator(set_.end()));
    std::sort(v.begin(), v.end());
    return v;
  }

 private:
  std::size_t cap_;
  int t_, u_;
  std::unordered_set<std::string> set_;
};

}  // namespace

const std::vector<std::string>& DiagramEnumerator::graphs(int t, int u) {
  const auto key = std::make_pair(t, u);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  CodeSet out(capacity_, t, u);
  if (t < 0 || u < 0 || (t + u) % 2 != 0) {
    // empty
  } else if (t == 0) {
    if (u == 2) out.add({{VertexKind::Univalent, VertexKind::Univalent}, {{0, 1}}});
  } else if (u == 0) {
    for (const auto& code : graphs(t, 2)) {
      auto el = to_edge_list(decode(code));
      std::vector<int> legs, nb;
      for (std::size_t i = 0; i < el.edges.size(); ++i) {
        auto [x, y] = el.edges[i];
        if (el.kinds[x] == VertexKind::Univalent) { legs.push_back(x); nb.push_back(y); }
        if (el.kinds[y] == VertexKind::Univalent) { legs.push_back(y); nb.push_back(x); }
      }
      if (nb[0] == nb[1]) continue;  // would create a loop
      EdgeListGraph j;
      std::vector<int> remap(el.kinds.size(), -1);
      for (std::size_t v = 0; v < el.kinds.size(); ++v)
        if (el.kinds[v] != VertexKind::Univalent) {
          remap[v] = static_cast<int>(j.kinds.size());
          j.kinds.push_back(el.kinds[v]);
        }
      for (auto [x, y] : el.edges)
        if (remap[x] >= 0 && remap[y] >= 0) j.edges.emplace_back(remap[x], remap[y]);
      j.edges.emplace_back(remap[nb[0]], remap[nb[1]]);
      out.add(j);
    }
  } else {
    // Leg insertion on any edge of a (t-1, u-1) graph.
    for (const auto& code : graphs(t - 1, u - 1)) {
      const auto base = to_edge_list(decode(code));
      for (std::size_t i = 0; i < base.edges.size(); ++i) {
        auto el = base;
        const int w = static_cast<int>(el.kinds.size());
        el.kinds.push_back(VertexKind::Normal);
        el.kinds.push_back(VertexKind::Univalent);
        auto [x, y] = el.edges[i];
        el.edges[i] = {x, w};
        el.edges.emplace_back(w, y);
        el.edges.emplace_back(w, w + 1);
        out.add(el);
      }
    }
    // Bubble insertion on a leg edge of a (t-2, u) graph.
    for (const auto& code : graphs(t - 2, u)) {
      const auto base = to_edge_list(decode(code));
      for (std::size_t i = 0; i < base.edges.size(); ++i) {
        auto [x, y] = base.edges[i];
        int leg = -1, z = -1;
        if (base.kinds[x] == VertexKind::Univalent) { leg = x; z = y; }
        else if (base.kinds[y] == VertexKind::Univalent) { leg = y; z = x; }
        if (leg < 0) continue;
        auto el = base;
        const int w = static_cast<int>(el.kinds.size());
        el.kinds.push_back(VertexKind::Normal);
        el.kinds.push_back(VertexKind::Normal);
        el.edges[i] = {leg, w};
        el.edges.emplace_back(w, w + 1);
        el.edges.emplace_back(w, w + 1);
        el.edges.emplace_back(w + 1, z);
        out.add(el);
      }
    }
  }
  return cache_.emplace(key, std::move(out).sorted()).first->second;
}

std::vector<std::string> DiagramEnumerator::diagrams(int m, int u) {
  std::vector<std::string> out;
  const int t = 2 * m - u;
  if (m < 1 || u < 0 || t < 0) return out;
  for (const auto& code : graphs(t, u))
    if (!canonicalize(decode(code)).zero()) out.push_back(code);
  return out;
}

}  // namespace vg
