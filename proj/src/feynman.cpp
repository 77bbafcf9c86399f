#include "feynman.hpp"

#include <algorithm>
#include <set>

#include "canon.hpp"
#include "quotient.hpp"

namespace vg {

std::string to_string(const FeynmanDegree& d) {
  return "(" + std::to_string(d.m) + "," + std::to_string(d.u) + "," + std::to_string(d.p) + "," +
         std::to_string(d.q) + ")";
}

FeynmanDegree feynman_degree(const Graph& g) {
  FeynmanDegree d;
  d.u = g.count(VertexKind::Univalent);
  d.p = g.count(EdgeKind::Photon);
  d.q = g.count(VertexKind::Tetra);
  const int n = g.count(VertexKind::Normal);
  const int twice = n + d.u + 6 * d.p + 4 * d.q;
  if (twice % 2) throw StructureError("Feynman graph of half-integral degree");
  d.m = twice / 2;
  return d;
}

Graph contract(const Graph& g, const std::vector<Ladder>& photons, const std::vector<Ladder>& squares) {
  std::vector<char> removed(g.num_vertices(), 0), kept_dart(g.num_darts(), 0);
  auto take = [&](const Ladder& l) {
    for (int i = 0; i < l.rungs; ++i) {
      if (removed[l.a[i]] || removed[l.b[i]]) throw PreconditionError("contracted ladders must be vertex-disjoint");
      removed[l.a[i]] = removed[l.b[i]] = 1;
    }
    for (int d : l.end_dart) kept_dart[d] = 1;
  };
  for (const auto& l : photons) {
    if (l.rungs != 3) throw PreconditionError("photon edges come from 3-ladders");
    take(l);
  }
  for (const auto& l : squares) {
    if (l.rungs != 2) throw PreconditionError("tetravalent vertices come from squares");
    take(l);
  }
  std::vector<VertexKind> kinds;
  std::vector<std::vector<int>> stubs;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (removed[v]) continue;
    kinds.push_back(g.kind(v));
    stubs.emplace_back(g.darts(v).begin(), g.darts(v).end());
    for (int d : g.darts(v)) kept_dart[d] = 1;
  }
  std::vector<StubPair> pairs;
  for (int e = 0; e < g.num_edges(); ++e)
    if (kept_dart[2 * e] && kept_dart[2 * e + 1]) pairs.push_back({2 * e, 2 * e + 1, g.edge_kind(e)});
  int next = g.num_darts();
  for (const auto& l : photons) {
    kinds.push_back(VertexKind::Photon);
    stubs.push_back({l.end_dart[0], l.end_dart[1], next});
    kinds.push_back(VertexKind::Photon);
    stubs.push_back({l.end_dart[2], l.end_dart[3], next + 1});
    pairs.push_back({next, next + 1, EdgeKind::Photon});
    next += 2;
  }
  for (const auto& l : squares) {
    kinds.push_back(VertexKind::Tetra);
    stubs.push_back({l.end_dart[0], l.end_dart[1], l.end_dart[2], l.end_dart[3]});
  }
  auto out = assemble(kinds, stubs, pairs, next);
  if (!out) throw StructureError("contraction disconnected the graph");
  return std::move(*out);
}

namespace {

// Planar n-ladder whose four ends are the given host darts (a_1 left, b_1
// left, a_n right, b_n right). a_i carries (right, left, rung) and b_i
// (right, rung, left).
void add_ladder(int n, const std::array<int, 4>& ends, int& next, std::vector<VertexKind>& kinds,
                std::vector<std::vector<int>>& stubs, std::vector<StubPair>& pairs) {
  const int base = next;
  next += 6 * n;
  auto k = [&](int i, int slot) { return base + 6 * i + slot; };
  enum { AR, AL, AG, BR, BG, BL };
  for (int i = 0; i < n; ++i) {
    const int ar = i + 1 < n ? k(i, AR) : ends[2], al = i > 0 ? k(i, AL) : ends[0];
    const int br = i + 1 < n ? k(i, BR) : ends[3], bl = i > 0 ? k(i, BL) : ends[1];
    kinds.push_back(VertexKind::Normal);
    stubs.push_back({ar, al, k(i, AG)});
    kinds.push_back(VertexKind::Normal);
    stubs.push_back({br, k(i, BG), bl});
    pairs.push_back({k(i, AG), k(i, BG)});
    if (i + 1 < n) {
      pairs.push_back({k(i, AR), k(i + 1, AL)});
      pairs.push_back({k(i, BR), k(i + 1, BL)});
    }
  }
}

}  // namespace

Graph r_map(const Graph& g) {
  std::vector<VertexKind> kinds;
  std::vector<std::vector<int>> stubs;
  std::vector<StubPair> pairs;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto k = g.kind(v);
    if (k == VertexKind::Normal || k == VertexKind::Univalent) {
      kinds.push_back(k);
      stubs.emplace_back(g.darts(v).begin(), g.darts(v).end());
    }
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (g.edge_kind(e) == EdgeKind::Normal) pairs.push_back({2 * e, 2 * e + 1});
  int next = g.num_darts();
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.edge_kind(e) != EdgeKind::Photon) continue;
    std::array<int, 4> ends{};
    int j = 0;
    for (int d : g.darts(g.vertex_of(2 * e)))
      if (d != 2 * e) ends[j++] = d;
    for (int d : g.darts(g.vertex_of(2 * e + 1)))
      if (d != 2 * e + 1) ends[j++] = d;
    add_ladder(3, ends, next, kinds, stubs, pairs);
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.kind(v) != VertexKind::Tetra) continue;
    const auto d = g.darts(v);
    add_ladder(2, {d[0], d[1], d[2], d[3]}, next, kinds, stubs, pairs);
  }
  auto out = assemble(kinds, stubs, pairs, next);
  if (!out) throw StructureError("r produced a disconnected diagram");
  return std::move(*out);
}

SignedGraph s_map(const Graph& d) { return add_square(d); }

LinearCombination phi(int f, const Graph& g) {
  const auto deg = feynman_degree(g);
  if (f < 0 || !admissible({f, deg.p, deg.q}, deg.m + 2 * f, deg.u))
    throw PreconditionError("(" + std::to_string(f) + "," + std::to_string(deg.p) + "," + std::to_string(deg.q) +
                            ") is not in T(" + std::to_string(deg.m + 2 * f) + "," + std::to_string(deg.u) + ")");
  SignedGraph cur{r_map(g), 1};
  for (int i = 0; i < f; ++i) {
    auto next = s_map(cur.graph);
    cur.graph = std::move(next.graph);
    cur.sign *= next.sign;
  }
  LinearCombination out;
  const auto c = canonicalize(cur.graph);
  if (!c.zero()) out.add(c.code, c.sign * cur.sign);
  return out;
}

void FeynmanEnumerator::fill(int m, int u) {
  std::map<std::pair<int, int>, std::set<std::string>> found;
  std::size_t produced = 0;
  const int t = 2 * m - u;
  if (m >= 1 && t >= 0) {
    for (const auto& code : en_.graphs(t, u)) {
      const Graph g = decode(code);
      std::vector<Ladder> threes, twos;
      for (auto& l : all_ladders(g)) {
        if (l.rungs == 3) threes.push_back(std::move(l));
        else if (l.rungs == 2) twos.push_back(std::move(l));
      }
      std::vector<char> used(g.num_vertices(), 0);
      std::vector<Ladder> ph, sq;
      auto fits = [&](const Ladder& l) {
        for (int i = 0; i < l.rungs; ++i)
          if (used[l.a[i]] || used[l.b[i]]) return false;
        return true;
      };
      auto mark = [&](const Ladder& l, char x) {
        for (int i = 0; i < l.rungs; ++i) used[l.a[i]] = used[l.b[i]] = x;
      };
      auto emit = [&] {
        if (++produced > capacity_)
          throw CapacityError("Feynman enumeration at degree (" + std::to_string(m) + "," + std::to_string(u) +
                              ") exceeds " + std::to_string(capacity_) + " contractions");
        const Graph h = ph.empty() && sq.empty() ? g : contract(g, ph, sq);
        found[{static_cast<int>(ph.size()), static_cast<int>(sq.size())}].insert(canonicalize(h).code);
      };
      // squares after photons, each list in increasing index order
      std::function<void(std::size_t)> squares = [&](std::size_t from) {
        emit();
        for (std::size_t i = from; i < twos.size(); ++i) {
          if (!fits(twos[i])) continue;
          mark(twos[i], 1);
          sq.push_back(twos[i]);
          squares(i + 1);
          sq.pop_back();
          mark(twos[i], 0);
        }
      };
      std::function<void(std::size_t)> photons = [&](std::size_t from) {
        squares(0);
        for (std::size_t i = from; i < threes.size(); ++i) {
          if (!fits(threes[i])) continue;
          mark(threes[i], 1);
          ph.push_back(threes[i]);
          photons(i + 1);
          ph.pop_back();
          mark(threes[i], 0);
        }
      };
      photons(0);
    }
  }
  for (int p = 0; 6 * p <= std::max(t, 0); ++p)
    for (int q = 0; 6 * p + 4 * q <= std::max(t, 0); ++q) {
      auto& s = found[{p, q}];
      cache_[{m, u, p, q}] = std::vector<std::string>(s.begin(), s.end());
    }
}

const std::vector<std::string>& FeynmanEnumerator::graphs(const FeynmanDegree& d) {
  static const std::vector<std::string> none;
  if (d.m < 1 || d.u < 0 || d.p < 0 || d.q < 0 || d.normal() < 0) return none;
  auto it = cache_.find(d);
  if (it == cache_.end()) {
    fill(d.m, d.u);
    it = cache_.find(d);
  }
  return it->second;
}

std::vector<std::string> FeynmanEnumerator::basis(const FeynmanDegree& d) {
  std::vector<std::string> out;
  for (const auto& code : graphs(d))
    if (!canonicalize(decode(code)).zero()) out.push_back(code);
  return out;
}

CycleRules CycleRules::load(const std::string& path) { return CycleRules(load_schemas(path, ".pattern")); }

std::string CycleRules::violation(const Graph& g, int m) const {
  if (g.has_loop()) return "loop";
  const int n = g.num_vertices();
  std::vector<std::vector<int>> adj(n);
  for (int v = 0; v < n; ++v)
    for (int d : g.darts(v)) adj[v].push_back(g.other_end(d));
  for (auto& a : adj) std::sort(a.begin(), a.end());
  if (m > 2)
    for (const auto& a : adj)
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) return "double";
  for (int x = 0; x < n; ++x)
    for (int y : adj[x]) {
      if (y <= x) continue;
      for (int z : adj[y])
        if (z > y && std::binary_search(adj[x].begin(), adj[x].end(), z)) return "triangle";
    }
  for (const auto& p : patterns_) {
    const auto terms = p.instantiate(0);
    if (!match(g, terms.front().fragment, false).empty()) return p.name;
  }
  return "";
}

MuResult mu(FeynmanEnumerator& fe, const FeynmanDegree& d, const std::vector<const RelationSchema*>& relations,
            const CycleRules& rules, const RankOptions& ropt, const RelationOptions& opt) {
  MuResult r;
  const auto all = fe.basis(d);
  r.graphs = all.size();
  std::vector<std::string> allowed;
  for (const auto& code : all)
    if (!rules.forbidden(decode(code), d.m)) allowed.push_back(code);
  r.allowed = allowed.size();
  if (allowed.empty()) return r;
  RelationMatrix rm(allowed);
  std::vector<LinearCombination> buf;
  for (const auto& code : fe.graphs(d)) {
    const Graph g = decode(code);
    buf.clear();
    for (const auto* s : relations) host_relations(g, *s, buf);
    for (const auto& v : buf) {
      LinearCombination kept;
      for (const auto& [c, x] : v.terms())
        if (rm.column(c) >= 0) kept.add(c, x);
      if (!kept.empty()) rm.add(kept);
    }
    if (rm.size() > opt.capacity)
      throw CapacityError("relation generation at Feynman degree " + to_string(d) + " exceeds " +
                          std::to_string(opt.capacity) + " vectors");
  }
  r.relations = rm.size();
  r.rank = rank(rm.matrix(), ropt);
  r.value = r.allowed - r.rank;
  return r;
}

}  // namespace vg
