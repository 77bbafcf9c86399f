#include "ladder.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "canon.hpp"
#include "quotient.hpp"

namespace vg {

std::string to_string(const Delta& d) {
  return "(" + std::to_string(d.f) + "," + std::to_string(d.o) + "," + std::to_string(d.e) + ")";
}

namespace {

int remaining_dart(const Graph& g, int v, int x, int y) {
  for (int d : g.darts(v))
    if (d != x && d != y) return d;
  return -1;
}

bool finish(const Graph& g, Ladder& l) {
  const int n = l.rungs;
  l.end_dart[0] = remaining_dart(g, l.a[0], l.rung_dart_a[0], l.rail_a[0]);
  l.end_dart[1] = remaining_dart(g, l.b[0], Graph::partner(l.rung_dart_a[0]), l.rail_b[0]);
  l.end_dart[2] = remaining_dart(g, l.a[n - 1], l.rung_dart_a[n - 1], Graph::partner(l.rail_a[n - 2]));
  l.end_dart[3] = remaining_dart(g, l.b[n - 1], Graph::partner(l.rung_dart_a[n - 1]), Graph::partner(l.rail_b[n - 2]));
  std::set<int> verts(l.a.begin(), l.a.end());
  verts.insert(l.b.begin(), l.b.end());
  std::set<int> end_edges;
  for (int d : l.end_dart) {
    if (d < 0 || verts.count(g.other_end(d))) return false;
    end_edges.insert(Graph::edge_of(d));
  }
  if (end_edges.size() != 4) return false;
  l.edges.clear();
  for (int i = 0; i < n; ++i) l.edges.push_back(Graph::edge_of(l.rung_dart_a[i]));
  for (int i = 0; i + 1 < n; ++i) {
    l.edges.push_back(Graph::edge_of(l.rail_a[i]));
    l.edges.push_back(Graph::edge_of(l.rail_b[i]));
  }
  for (int e : end_edges) l.edges.push_back(e);
  std::sort(l.edges.begin(), l.edges.end());
  return true;
}

void extend(const Graph& g, Ladder& l, int ra, int rb, std::set<std::vector<int>>& seen, std::vector<Ladder>& out) {
  const int an = g.other_end(ra), bn = g.other_end(rb);
  if (an == bn || Graph::edge_of(ra) == Graph::edge_of(rb)) return;
  if (g.kind(an) != VertexKind::Normal || g.kind(bn) != VertexKind::Normal) return;
  for (int v : l.a)
    if (v == an || v == bn) return;
  for (int v : l.b)
    if (v == an || v == bn) return;
  for (int d : g.darts(an)) {
    if (d == Graph::partner(ra) || g.other_end(d) != bn || Graph::partner(d) == Graph::partner(rb)) continue;
    l.a.push_back(an);
    l.b.push_back(bn);
    l.rung_dart_a.push_back(d);
    l.rail_a.push_back(ra);
    l.rail_b.push_back(rb);
    ++l.rungs;
    Ladder copy = l;
    if (finish(g, copy) && seen.insert(copy.edges).second) out.push_back(copy);
    const int na = remaining_dart(g, an, Graph::partner(ra), d);
    const int nb = remaining_dart(g, bn, Graph::partner(rb), Graph::partner(d));
    if (na >= 0 && nb >= 0) extend(g, l, na, nb, seen, out);
    --l.rungs;
    l.a.pop_back();
    l.b.pop_back();
    l.rung_dart_a.pop_back();
    l.rail_a.pop_back();
    l.rail_b.pop_back();
  }
}

}  // namespace

std::vector<Ladder> all_ladders(const Graph& g) {
  std::vector<Ladder> out;
  std::set<std::vector<int>> seen;
  for (int d0 = 0; d0 < g.num_darts(); ++d0) {
    const int x = g.vertex_of(d0), y = g.other_end(d0);
    if (x == y || g.kind(x) != VertexKind::Normal || g.kind(y) != VertexKind::Normal) continue;
    for (int ra : g.darts(x)) {
      if (ra == d0) continue;
      for (int rb : g.darts(y)) {
        if (rb == Graph::partner(d0)) continue;
        Ladder l;
        l.rungs = 1;
        l.a = {x};
        l.b = {y};
        l.rung_dart_a = {d0};
        extend(g, l, ra, rb, seen, out);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Ladder& p, const Ladder& q) { return p.edges < q.edges; });
  return out;
}

LadderReport ladder_report(const Graph& g) {
  LadderReport r;
  const auto all = all_ladders(g);
  std::vector<const Ladder*> maximal;
  for (const auto& l : all) {
    bool is_max = true;
    for (const auto& o : all)
      if (o.edges.size() > l.edges.size() &&
          std::includes(o.edges.begin(), o.edges.end(), l.edges.begin(), l.edges.end())) {
        is_max = false;
        break;
      }
    if (is_max) maximal.push_back(&l);
  }
  std::vector<int> owners(g.num_vertices(), 0);
  for (const auto* l : maximal) {
    for (int v : l->a) ++owners[v];
    for (int v : l->b) ++owners[v];
  }
  for (const auto* l : maximal) {
    bool alone = true;
    for (int i = 0; i < l->rungs; ++i) alone = alone && owners[l->a[i]] == 1 && owners[l->b[i]] == 1;
    if (!alone) {
      r.overlapping.push_back(*l);
      continue;
    }
    r.maximal.push_back(*l);
    ++r.counts[l->rungs];
    r.delta.f += (l->rungs - 2) / 2;
    (l->rungs % 2 ? r.delta.o : r.delta.e) += 1;
  }
  return r;
}

Delta delta(const Graph& g) { return ladder_report(g).delta; }

bool admissible(const Delta& d, int m, int u) {
  if (d.f < 0 || d.o < 0 || d.e < 0) return false;
  if (d.o + d.e == 0 && d.f != 0) return false;
  return 4 * d.f + 6 * d.o + 4 * d.e <= 2 * m - u && 2 * d.f + 2 * d.o + d.e <= m - u + 1;
}

std::vector<Delta> t_set(int m, int u) {
  std::vector<Delta> out;
  const int top = std::max(0, 2 * m - u);
  for (int f = 0; 4 * f <= top; ++f)
    for (int o = 0; 6 * o <= top; ++o)
      for (int e = 0; 4 * e <= top; ++e)
        if (admissible({f, o, e}, m, u)) out.push_back({f, o, e});
  return out;
}

namespace {

// Planar slot order of a ladder vertex; empty for other vertices.
std::vector<int> planar_order(const Ladder& l, int v) {
  const int n = l.rungs;
  for (int i = 0; i < n; ++i) {
    if (l.a[i] == v) {
      const int right = i + 1 < n ? l.rail_a[i] : l.end_dart[2];
      const int left = i > 0 ? Graph::partner(l.rail_a[i - 1]) : l.end_dart[0];
      return {right, left, l.rung_dart_a[i]};
    }
    if (l.b[i] == v) {
      const int right = i + 1 < n ? l.rail_b[i] : l.end_dart[3];
      const int left = i > 0 ? Graph::partner(l.rail_b[i - 1]) : l.end_dart[1];
      return {right, Graph::partner(l.rung_dart_a[i]), left};
    }
  }
  return {};
}

int cyclic_sign(std::span<const int> host, const std::vector<int>& want) {
  for (int k = 0; k < 3; ++k)
    if (host[k] == want[0]) return host[(k + 1) % 3] == want[1] ? 1 : -1;
  throw StructureError("ladder darts do not belong to the vertex");
}

// Host vertices (minus `removed`) with ladder vertices in planar order.
void host_stubs(const Graph& g, const Ladder& l, const std::vector<char>& removed, std::vector<VertexKind>& kinds,
                std::vector<std::vector<int>>& stubs) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (removed[v]) continue;
    kinds.push_back(g.kind(v));
    auto p = planar_order(l, v);
    if (p.empty()) p.assign(g.darts(v).begin(), g.darts(v).end());
    stubs.push_back(std::move(p));
  }
}

}  // namespace

int planar_sign(const Graph& g, const Ladder& l) {
  int s = 1;
  for (int i = 0; i < l.rungs; ++i) {
    s *= cyclic_sign(g.darts(l.a[i]), planar_order(l, l.a[i]));
    s *= cyclic_sign(g.darts(l.b[i]), planar_order(l, l.b[i]));
  }
  return s;
}

SignedGraph reduce_square(const Graph& g, const Ladder& l) {
  if (l.rungs < 4) throw PreconditionError("a reduction needs a ladder with at least four rungs");
  std::vector<char> removed(g.num_vertices(), 0);
  for (int i : {1, 2}) removed[l.a[i]] = removed[l.b[i]] = 1;
  std::vector<VertexKind> kinds;
  std::vector<std::vector<int>> stubs;
  host_stubs(g, l, removed, kinds, stubs);
  std::vector<StubPair> pairs;
  for (int e = 0; e < g.num_edges(); ++e)
    if (!removed[g.vertex_of(2 * e)] && !removed[g.vertex_of(2 * e + 1)]) pairs.push_back({2 * e, 2 * e + 1, g.edge_kind(e)});
  pairs.push_back({l.rail_a[0], Graph::partner(l.rail_a[2])});
  pairs.push_back({l.rail_b[0], Graph::partner(l.rail_b[2])});
  auto out = assemble(kinds, stubs, pairs, g.num_darts());
  if (!out) throw StructureError("reduction disconnected the diagram");
  return {std::move(*out), planar_sign(g, l)};
}

SignedGraph insert_square(const Graph& g, const Ladder& l) {
  if (l.rungs < 2) throw PreconditionError("square insertion needs a ladder");
  std::vector<char> removed(g.num_vertices(), 0);
  std::vector<VertexKind> kinds;
  std::vector<std::vector<int>> stubs;
  host_stubs(g, l, removed, kinds, stubs);
  const int nd = g.num_darts();
  // x1, x2 on the a-rail with stubs (right, left, rung); y1, y2 on the b-rail
  // with (right, rung, left).
  auto key = [&](int vertex, int slot) { return nd + 3 * vertex + slot; };
  for (int v = 0; v < 4; ++v) {
    kinds.push_back(VertexKind::Normal);
    stubs.push_back({key(v, 0), key(v, 1), key(v, 2)});
  }
  constexpr int R = 0;
  const int x1 = 0, x2 = 1, y1 = 2, y2 = 3;
  std::vector<StubPair> pairs;
  const int ea = Graph::edge_of(l.rail_a[0]), eb = Graph::edge_of(l.rail_b[0]);
  for (int e = 0; e < g.num_edges(); ++e)
    if (e != ea && e != eb) pairs.push_back({2 * e, 2 * e + 1, g.edge_kind(e)});
  pairs.push_back({l.rail_a[0], key(x1, 1)});
  pairs.push_back({key(x1, R), key(x2, 1)});
  pairs.push_back({key(x2, R), Graph::partner(l.rail_a[0])});
  pairs.push_back({l.rail_b[0], key(y1, 2)});
  pairs.push_back({key(y1, R), key(y2, 2)});
  pairs.push_back({key(y2, R), Graph::partner(l.rail_b[0])});
  pairs.push_back({key(x1, 2), key(y1, 1)});
  pairs.push_back({key(x2, 2), key(y2, 1)});
  auto out = assemble(kinds, stubs, pairs, nd + 12);
  return {std::move(*out), planar_sign(g, l)};
}

SignedGraph add_square(const Graph& g) {
  auto rep = ladder_report(g);
  if (rep.maximal.empty()) throw PreconditionError("s needs a diagram with a ladder");
  return insert_square(g, rep.maximal.front());
}

SignedGraph complete_reduction(const Graph& g, const std::function<std::size_t(std::size_t)>& pick) {
  SignedGraph cur{g, 1};
  for (;;) {
    std::vector<Ladder> cands;
    for (auto& l : ladder_report(cur.graph).maximal)
      if (l.rungs >= 4) cands.push_back(std::move(l));
    if (cands.empty()) return cur;
    const std::size_t i = pick ? pick(cands.size()) % cands.size() : 0;
    auto r = reduce_square(cur.graph, cands[i]);
    cur.graph = std::move(r.graph);
    cur.sign *= r.sign;
  }
}

std::vector<FiltrationRow> filtration_dims(DiagramEnumerator& en, int m, int u,
                                           const std::vector<const RelationSchema*>& schemas, const RankOptions& ropt,
                                           const RelationOptions& opt) {
  const auto ts = t_set(m, u);
  std::vector<FiltrationRow> rows;
  for (const auto& t : ts) rows.push_back({t, 0, 0, 0});
  auto rm = relation_matrix(en, m, u, schemas, opt);
  std::vector<int> block;
  for (const auto& code : rm.basis()) {
    const Delta d = delta(decode(code));
    auto it = std::find(ts.begin(), ts.end(), d);
    if (it == ts.end()) throw StructureError("diagram with delta " + to_string(d) + " outside T(m,u)");
    block.push_back(static_cast<int>(it - ts.begin()));
    ++rows[it - ts.begin()].diagrams;
  }
  if (block.empty()) return rows;
  const auto ech = exact_echelon(rm.matrix(), block, ropt);
  std::size_t tail = 0;
  for (std::size_t b = ts.size(); b-- > 0;) {
    const std::size_t piv = b < ech.pivots.size() ? ech.pivots[b] : 0;
    rows[b].dim_g = rows[b].diagrams - piv;
    tail += rows[b].dim_g;
    rows[b].dim_f = tail;
  }
  return rows;
}

}  // namespace vg
