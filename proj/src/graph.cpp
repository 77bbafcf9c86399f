#include "graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace vg {

int valency(VertexKind k) {
  switch (k) {
    case VertexKind::Univalent: return 1;
    case VertexKind::Normal: return 3;
    case VertexKind::Photon: return 3;
    case VertexKind::Tetra: return 4;
  }
  return 0;
}

char kind_letter(VertexKind k) {
  switch (k) {
    case VertexKind::Univalent: return 'u';
    case VertexKind::Normal: return 'n';
    case VertexKind::Photon: return 'p';
    case VertexKind::Tetra: return 't';
  }
  return '?';
}

int Graph::count(VertexKind k) const {
  return static_cast<int>(std::count(vkind_.begin(), vkind_.end(), k));
}

int Graph::count(EdgeKind k) const {
  return static_cast<int>(std::count(ekind_.begin(), ekind_.end(), k));
}

bool Graph::is_connected() const {
  const int n = num_vertices();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int d : vdarts_[v]) {
      int w = other_end(d);
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

bool Graph::has_loop() const {
  for (int e = 0; e < num_edges(); ++e)
    if (dvert_[2 * e] == dvert_[2 * e + 1]) return true;
  return false;
}

bool Graph::is_diagram() const {
  for (auto k : vkind_)
    if (k != VertexKind::Univalent && k != VertexKind::Normal) return false;
  for (auto k : ekind_)
    if (k != EdgeKind::Normal) return false;
  return true;
}

int GraphBuilder::add_vertex(VertexKind k) {
  g_.vkind_.push_back(k);
  g_.vdarts_.emplace_back();
  return num_vertices() - 1;
}

int GraphBuilder::add_edge(int v, int w, EdgeKind k) {
  const int n = num_vertices();
  if (v < 0 || w < 0 || v >= n || w >= n) throw StructureError("edge endpoint out of range");
  const int e = static_cast<int>(g_.ekind_.size());
  g_.ekind_.push_back(k);
  g_.dvert_.push_back(v);
  g_.dvert_.push_back(w);
  g_.vdarts_[v].push_back(2 * e);
  g_.vdarts_[w].push_back(2 * e + 1);
  return e;
}

void GraphBuilder::set_rotation(int v, std::vector<int> darts) {
  auto cur = g_.vdarts_.at(v);
  auto a = cur, b = darts;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw StructureError("rotation is not a permutation of the vertex darts");
  g_.vdarts_[v] = std::move(darts);
}

namespace {

void validate(const Graph& g, bool require_connected) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto k = g.kind(v);
    if (static_cast<int>(g.darts(v).size()) != valency(k))
      throw StructureError("vertex " + std::to_string(v) + " of kind '" + kind_letter(k) + "' has valency " +
                           std::to_string(g.darts(v).size()));
    int photons = 0;
    for (int d : g.darts(v))
      if (g.edge_kind(Graph::edge_of(d)) == EdgeKind::Photon) ++photons;
    if (k == VertexKind::Photon && photons != 1)
      throw StructureError("photon vertex " + std::to_string(v) + " must carry exactly one photon edge");
    if (k != VertexKind::Photon && photons != 0)
      throw StructureError("photon edge ends at non-photon vertex " + std::to_string(v));
  }
  if (require_connected && !g.is_connected()) throw StructureError("graph is not connected");
}

}  // namespace

Graph GraphBuilder::build(bool require_connected) && {
  validate(g_, require_connected);
  return std::move(g_);
}

Graph GraphBuilder::build(bool require_connected) const& {
  validate(g_, require_connected);
  return g_;
}

std::optional<Graph> assemble(const std::vector<VertexKind>& kinds, const std::vector<std::vector<int>>& stubs,
                              const std::vector<StubPair>& pairs, int nkeys) {
  std::vector<int> vert(nkeys, -1), dart(nkeys, -1);
  for (std::size_t v = 0; v < stubs.size(); ++v)
    for (int k : stubs[v]) vert[k] = static_cast<int>(v);
  GraphBuilder b;
  for (auto k : kinds) b.add_vertex(k);
  for (const auto& p : pairs) {
    const int e = b.add_edge(vert[p.a], vert[p.b], p.kind);
    dart[p.a] = 2 * e;
    dart[p.b] = 2 * e + 1;
  }
  for (std::size_t v = 0; v < stubs.size(); ++v) {
    std::vector<int> rot;
    for (int k : stubs[v]) rot.push_back(dart[k]);
    b.set_rotation(static_cast<int>(v), std::move(rot));
  }
  Graph g = std::move(b).build(false);
  if (!g.is_connected()) return std::nullopt;
  return g;
}

Graph relabel(const Graph& g, std::span<const int> order) {
  const int n = g.num_vertices();
  if (static_cast<int>(order.size()) != n) throw StructureError("relabel: order size mismatch");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.add_vertex(g.kind(order[i]));
  std::vector<int> new_dart(g.num_darts(), -1);
  for (int i = 0; i < n; ++i) {
    for (int d : g.darts(order[i])) {
      if (new_dart[d] >= 0) continue;
      const int e = b.add_edge(i, pos[g.other_end(d)], g.edge_kind(Graph::edge_of(d)));
      new_dart[d] = 2 * e;
      new_dart[Graph::partner(d)] = 2 * e + 1;
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> rot;
    for (int d : g.darts(order[i])) rot.push_back(new_dart[d]);
    b.set_rotation(i, std::move(rot));
  }
  return std::move(b).build(false);
}

// ---------------------------------------------------------------------------
// Text format

std::string to_text(const Graph& g) {
  std::ostringstream os;
  const bool feyn = !g.is_diagram();
  os << (feyn ? "feynman" : "diagram") << "\n";
  os << "darts " << g.num_darts() << "\n";
  os << "involution";
  for (int e = 0; e < g.num_edges(); ++e) os << (e ? ", " : " ") << 2 * e << " " << 2 * e + 1;
  os << "\n";
  os << "vertices";
  for (int v = 0; v < g.num_vertices(); ++v) {
    os << (v ? "," : "");
    for (int d : g.darts(v)) os << " " << d;
  }
  os << "\n";
  if (feyn) {
    os << "vtypes";
    for (int v = 0; v < g.num_vertices(); ++v) os << " " << kind_letter(g.kind(v));
    os << "\n";
    os << "etypes";
    for (int e = 0; e < g.num_edges(); ++e) os << " " << (g.edge_kind(e) == EdgeKind::Photon ? 'p' : 'n');
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

namespace {

std::vector<std::vector<long>> split_groups(const std::string& body, int line) {
  std::vector<std::vector<long>> groups;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::istringstream ps(part);
    std::vector<long> nums;
    std::string tok;
    while (ps >> tok) {
      try {
        std::size_t used = 0;
        long x = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        nums.push_back(x);
      } catch (const std::exception&) {
        throw ParseError("expected integer, got '" + tok + "'", line);
      }
    }
    groups.push_back(std::move(nums));
  }
  return groups;
}

struct RawGraph {
  bool feynman = false;
  long darts = -1;
  std::vector<std::vector<long>> involution, vertices, rotation;
  std::vector<char> vtypes, etypes;
  int start_line = 0;
};

Graph assemble(const RawGraph& r) {
  const int line = r.start_line;
  if (r.darts < 0) throw ParseError("missing 'darts' field", line);
  const long nd = r.darts;
  std::vector<long> edge_of(nd, -1), slot(nd, -1);
  for (std::size_t e = 0; e < r.involution.size(); ++e) {
    const auto& p = r.involution[e];
    if (p.size() != 2) throw ParseError("involution pairs must have two darts", line);
    for (int s = 0; s < 2; ++s) {
      if (p[s] < 0 || p[s] >= nd) throw ParseError("dart out of range in involution", line);
      if (edge_of[p[s]] >= 0) throw ParseError("dart paired twice", line);
      edge_of[p[s]] = static_cast<long>(e);
      slot[p[s]] = s;
    }
  }
  for (long d = 0; d < nd; ++d)
    if (edge_of[d] < 0) throw ParseError("dart " + std::to_string(d) + " is unpaired", line);
  std::vector<long> vert_of(nd, -1);
  for (std::size_t v = 0; v < r.vertices.size(); ++v)
    for (long d : r.vertices[v]) {
      if (d < 0 || d >= nd) throw ParseError("dart out of range in vertices", line);
      if (vert_of[d] >= 0) throw ParseError("dart in two vertex cells", line);
      vert_of[d] = static_cast<long>(v);
    }
  for (long d = 0; d < nd; ++d)
    if (vert_of[d] < 0) throw ParseError("dart " + std::to_string(d) + " belongs to no vertex", line);

  const auto nv = r.vertices.size();
  if (r.feynman && r.vtypes.size() != nv) throw ParseError("vtypes count mismatch", line);
  if (r.feynman && r.etypes.size() != r.involution.size()) throw ParseError("etypes count mismatch", line);

  GraphBuilder b;
  for (std::size_t v = 0; v < nv; ++v) {
    VertexKind k;
    if (r.feynman) {
      switch (r.vtypes[v]) {
        case 'u': k = VertexKind::Univalent; break;
        case 'n': k = VertexKind::Normal; break;
        case 'p': k = VertexKind::Photon; break;
        case 't': k = VertexKind::Tetra; break;
        default: throw ParseError(std::string("unknown vertex type '") + r.vtypes[v] + "'", line);
      }
    } else {
      const auto sz = r.vertices[v].size();
      if (sz == 1) k = VertexKind::Univalent;
      else if (sz == 3) k = VertexKind::Normal;
      else throw ParseError("diagram vertex cells must have size 1 or 3", line);
    }
    b.add_vertex(k);
  }
  for (std::size_t e = 0; e < r.involution.size(); ++e) {
    EdgeKind k = EdgeKind::Normal;
    if (r.feynman) {
      if (r.etypes[e] == 'p') k = EdgeKind::Photon;
      else if (r.etypes[e] != 'n') throw ParseError(std::string("unknown edge type '") + r.etypes[e] + "'", line);
    }
    b.add_edge(static_cast<int>(vert_of[r.involution[e][0]]), static_cast<int>(vert_of[r.involution[e][1]]), k);
  }
  auto internal = [&](long d) { return static_cast<int>(2 * edge_of[d] + slot[d]); };
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<int> rot;
    for (long d : r.vertices[v]) rot.push_back(internal(d));
    b.set_rotation(static_cast<int>(v), rot);
  }
  for (const auto& cyc : r.rotation) {
    if (cyc.empty()) continue;
    const long v = vert_of.at(cyc[0]);
    std::vector<int> rot;
    for (long d : cyc) {
      if (d < 0 || d >= nd || vert_of[d] != v) throw ParseError("rotation cycle mixes vertices", line);
      rot.push_back(internal(d));
    }
    try {
      b.set_rotation(static_cast<int>(v), rot);
    } catch (const StructureError& err) {
      throw ParseError(err.what(), line);
    }
  }
  try {
    return std::move(b).build();
  } catch (const StructureError& err) {
    throw ParseError(err.what(), line);
  }
}

}  // namespace

std::vector<Graph> parse_graphs(const std::string& text) {
  std::vector<Graph> out;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  bool open = false;
  RawGraph cur;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    if (key == "diagram" || key == "feynman") {
      if (open) throw ParseError("nested graph record", lineno);
      open = true;
      cur = RawGraph{};
      cur.feynman = key == "feynman";
      cur.start_line = lineno;
      continue;
    }
    if (!open) throw ParseError("field '" + key + "' outside a graph record", lineno);
    if (key == "end") {
      out.push_back(assemble(cur));
      open = false;
    } else if (key == "darts") {
      auto g = split_groups(rest, lineno);
      if (g.size() != 1 || g[0].size() != 1 || g[0][0] < 0) throw ParseError("bad darts count", lineno);
      cur.darts = g[0][0];
    } else if (key == "involution") {
      cur.involution = split_groups(rest, lineno);
    } else if (key == "vertices") {
      cur.vertices = split_groups(rest, lineno);
    } else if (key == "rotation") {
      cur.rotation = split_groups(rest, lineno);
    } else if (key == "vtypes" || key == "etypes") {
      std::istringstream ts(rest);
      std::string tok;
      auto& dst = key == "vtypes" ? cur.vtypes : cur.etypes;
      while (ts >> tok) {
        if (tok.size() != 1) throw ParseError("type tags are single letters", lineno);
        dst.push_back(tok[0]);
      }
    } else {
      throw ParseError("unknown field '" + key + "'", lineno);
    }
  }
  if (open) throw ParseError("unterminated graph record", lineno);
  return out;
}

Graph parse_graph(const std::string& text) {
  auto v = parse_graphs(text);
  if (v.size() != 1) throw ParseError("expected exactly one graph record", 1);
  return std::move(v.front());
}

}  // namespace vg
