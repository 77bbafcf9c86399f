#include "relation.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "canon.hpp"

namespace vg {

namespace {

struct StubGraph {
  std::vector<VertexKind> kinds;
  std::vector<std::vector<int>> stubs;
  std::vector<StubPair> pairs;
  int nkeys = 0;

  std::optional<Graph> build() const { return assemble(kinds, stubs, pairs, nkeys); }
};

const std::vector<std::vector<int>>& permutations(int k, bool cyclic) {
  static std::map<std::pair<int, bool>, std::vector<std::vector<int>>> cache;
  auto& out = cache[{k, cyclic}];
  if (!out.empty() || k == 0) {
    if (k == 0 && out.empty()) out.push_back({});
    return out;
  }
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  if (cyclic) {
    for (int s = 0; s < k; ++s) {
      std::vector<int> q(k);
      for (int i = 0; i < k; ++i) q[i] = (i + s) % k;
      out.push_back(q);
    }
  } else {
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

}  // namespace

std::vector<Embedding> match(const Graph& g, const Fragment& f, bool oriented) {
  const int nv = f.num_vertices();
  std::vector<int> order;
  std::vector<char> seen(nv, 0);
  for (int s = 0; s < nv; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::vector<int> queue{s};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int v = queue[i];
      order.push_back(v);
      for (int st : f.slots[v]) {
        if (f.link[st] < 0) continue;
        const int w = f.stub_vertex[f.link[st]];
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }

  std::vector<Embedding> out;
  Embedding cur{std::vector<int>(nv, -1), std::vector<int>(f.num_stubs(), -1)};
  std::vector<char> used(g.num_vertices(), 0);

  std::function<void(int)> step = [&](int i) {
    if (i == nv) {
      out.push_back(cur);
      return;
    }
    const int fv = order[i];
    std::vector<int> candidates;
    for (int st : f.slots[fv]) {
      const int l = f.link[st];
      if (l >= 0 && f.stub_vertex[l] != fv && cur.stub_dart[l] >= 0) {
        candidates.push_back(g.other_end(cur.stub_dart[l]));
        break;
      }
    }
    if (candidates.empty())
      for (int v = 0; v < g.num_vertices(); ++v) candidates.push_back(v);
    const auto& slots = f.slots[fv];
    const int k = static_cast<int>(slots.size());
    for (int hv : candidates) {
      if (used[hv] || g.kind(hv) != f.kinds[fv] || static_cast<int>(g.darts(hv).size()) != k) continue;
      const auto darts = g.darts(hv);
      const bool cyc = oriented && f.kinds[fv] == VertexKind::Normal;
      for (const auto& p : permutations(k, cyc)) {
        for (int j = 0; j < k; ++j) cur.stub_dart[slots[j]] = darts[p[j]];
        bool ok = true;
        for (int j = 0; j < k && ok; ++j) {
          const int st = slots[j], d = darts[p[j]];
          if (g.edge_kind(Graph::edge_of(d)) != f.stub_kind[st]) ok = false;
          const int l = f.link[st];
          if (ok && l >= 0 && cur.stub_dart[l] >= 0 && Graph::partner(d) != cur.stub_dart[l]) ok = false;
          // an internal edge must not be matched by an edge leading to an end
          if (ok && l >= 0 && cur.stub_dart[l] < 0 && used[g.other_end(d)]) ok = false;
          if (ok && l >= 0 && cur.stub_dart[l] < 0 && g.other_end(d) == hv) ok = false;
        }
        if (ok) {
          used[hv] = 1;
          cur.vertex[fv] = hv;
          step(i + 1);
          used[hv] = 0;
          cur.vertex[fv] = -1;
        }
        for (int j = 0; j < k; ++j) cur.stub_dart[slots[j]] = -1;
      }
    }
  };
  step(0);
  return out;
}

std::optional<Graph> rewire(const Graph& g, const std::vector<std::pair<int, int>>& pairs,
                            const std::vector<EdgeKind>& kinds) {
  StubGraph sg;
  sg.nkeys = g.num_darts();
  for (int v = 0; v < g.num_vertices(); ++v) {
    sg.kinds.push_back(g.kind(v));
    sg.stubs.emplace_back(g.darts(v).begin(), g.darts(v).end());
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) sg.pairs.push_back({pairs[i].first, pairs[i].second, kinds[i]});
  return sg.build();
}

std::optional<Graph> substitute(const Graph& g, const Fragment& pat, const Embedding& emb, const Fragment& rep) {
  const int nd = g.num_darts();
  std::vector<char> inside(g.num_vertices(), 0);
  for (int v : emb.vertex) inside[v] = 1;
  std::vector<int> end_at_dart(nd, -1);
  std::vector<int> dk(pat.ends);
  for (int k = 0; k < pat.ends; ++k) {
    dk[k] = emb.stub_dart[pat.end_stub[k]];
    end_at_dart[dk[k]] = k;
  }

  StubGraph sg;
  sg.nkeys = nd + rep.num_stubs();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (inside[v]) continue;
    sg.kinds.push_back(g.kind(v));
    sg.stubs.emplace_back(g.darts(v).begin(), g.darts(v).end());
  }
  for (int v = 0; v < rep.num_vertices(); ++v) {
    sg.kinds.push_back(rep.kinds[v]);
    std::vector<int> keys;
    for (int s : rep.slots[v]) keys.push_back(nd + s);
    sg.stubs.push_back(std::move(keys));
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!inside[g.vertex_of(2 * e)] && !inside[g.vertex_of(2 * e + 1)])
      sg.pairs.push_back({2 * e, 2 * e + 1, g.edge_kind(e)});
  for (int s = 0; s < rep.num_stubs(); ++s)
    if (rep.link[s] > s) sg.pairs.push_back({nd + s, nd + rep.link[s], rep.stub_kind[s]});

  // Each end has a host side (an outside dart or another end) and a
  // replacement side (a replacement stub or another end). Walk the chains.
  auto host_side = [&](int k) -> std::pair<int, int> {  // (key, -1) or (-1, end)
    const int h = Graph::partner(dk[k]);
    if (inside[g.vertex_of(h)]) return {-1, end_at_dart[h]};
    return {h, -1};
  };
  auto rep_side = [&](int k) -> std::pair<int, int> {
    if (rep.end_stub[k] >= 0) return {nd + rep.end_stub[k], -1};
    return {-1, rep.end_pass[k]};
  };
  std::vector<char> done(pat.ends, 0);
  for (int k = 0; k < pat.ends; ++k) {
    if (done[k]) continue;
    // Find a terminal: walk back along host/replacement links from k.
    int start = k;
    bool via_host = true;  // terminal found on host side of `start`
    {
      int cur = k;
      bool host = true;
      for (int steps = 0; steps <= 2 * pat.ends; ++steps) {
        auto [key, next] = host ? host_side(cur) : rep_side(cur);
        if (key >= 0) {
          start = cur;
          via_host = host;
          break;
        }
        cur = next;
        host = !host;
        if (steps == 2 * pat.ends) return std::nullopt;  // closed strand without vertices
      }
    }
    auto [first_key, unused] = via_host ? host_side(start) : rep_side(start);
    (void)unused;
    int cur = start;
    bool host = !via_host;
    int last_key = -1;
    for (;;) {
      done[cur] = 1;
      auto [key, next] = host ? host_side(cur) : rep_side(cur);
      if (key >= 0) {
        last_key = key;
        break;
      }
      cur = next;
      host = !host;
    }
    sg.pairs.push_back({first_key, last_key, pat.end_kind[start]});
  }
  return sg.build();
}

// ---------------------------------------------------------------------------
// Schema text format

namespace {

[[noreturn]] void fail(const std::string& msg, int line) { throw ParseError(msg, line); }

int parse_int(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) fail("expected an integer, got '" + s + "'", line);
    return v;
  } catch (const std::logic_error&) {
    fail("expected an integer, got '" + s + "'", line);
  }
}

EdgeKind parse_edge_kind(const std::vector<std::string>& t, std::size_t i, int line) {
  if (t.size() <= i) return EdgeKind::Normal;
  if (t.size() > i + 1) fail("trailing tokens", line);
  if (t[i] == "n") return EdgeKind::Normal;
  if (t[i] == "p") return EdgeKind::Photon;
  fail("unknown edge kind '" + t[i] + "'", line);
}

// Fragment under construction with named vertices and ladder ports.
class FragmentBuilder {
 public:
  FragmentBuilder(int ends, int n, bool has_param) : n_(n), has_param_(has_param) {
    f_.ends = ends;
    f_.end_stub.assign(ends, -1);
    f_.end_pass.assign(ends, -1);
    f_.end_kind.assign(ends, EdgeKind::Normal);
    end_set_.assign(ends, 0);
  }

  void line(const RelationSchema::Line& ln) {
    const auto& t = ln.tokens;
    const int no = ln.number;
    const std::string& op = t[0];
    if (op == "vertex") {
      if (t.size() != 3) fail("usage: vertex <name> n|p|t", no);
      if (names_.count(t[1]) || ladders_.count(t[1])) fail("duplicate name '" + t[1] + "'", no);
      VertexKind k;
      if (t[2] == "n") k = VertexKind::Normal;
      else if (t[2] == "p") k = VertexKind::Photon;
      else if (t[2] == "t") k = VertexKind::Tetra;
      else fail("unknown vertex kind '" + t[2] + "'", no);
      names_[t[1]] = add_vertex(k);
    } else if (op == "ladder") {
      if (t.size() != 3) fail("usage: ladder <name> <rungs>", no);
      if (names_.count(t[1]) || ladders_.count(t[1])) fail("duplicate name '" + t[1] + "'", no);
      add_ladder(t[1], rung_count(t[2], no), no);
    } else if (op == "edge") {
      if (t.size() < 3) fail("usage: edge <x> <y> [n|p]", no);
      const EdgeKind k = parse_edge_kind(t, 3, no);
      const int a = stub(t[1], no), b = stub(t[2], no);
      connect(a, b, k);
    } else if (op == "end") {
      if (t.size() < 3) fail("usage: end <k> <x> [n|p]", no);
      const int k = end_index(t[1], no);
      const EdgeKind kind = parse_edge_kind(t, 3, no);
      const int s = stub(t[2], no);
      f_.link[s] = -(k + 1);
      f_.stub_kind[s] = kind;
      f_.end_stub[k] = s;
      f_.end_kind[k] = kind;
    } else if (op == "pass") {
      if (t.size() < 3) fail("usage: pass <k1> <k2> [n|p]", no);
      const int a = end_index(t[1], no), b = end_index(t[2], no);
      if (a == b) fail("pass joins an end to itself", no);
      const EdgeKind kind = parse_edge_kind(t, 3, no);
      f_.end_pass[a] = b;
      f_.end_pass[b] = a;
      f_.end_kind[a] = f_.end_kind[b] = kind;
    } else if (op == "rotation") {
      rotations_.push_back(ln);
    } else {
      fail("unknown directive '" + op + "'", no);
    }
  }

  Fragment finish(int line) {
    for (const auto& ln : rotations_) apply_rotation(ln);
    for (int k = 0; k < f_.ends; ++k)
      if (!end_set_[k]) fail("end " + std::to_string(k + 1) + " is not attached", line);
    for (int s = 0; s < f_.num_stubs(); ++s)
      if (f_.link[s] == kUnset) fail("ladder port left unconnected", line);
    for (int v = 0; v < f_.num_vertices(); ++v)
      if (static_cast<int>(f_.slots[v].size()) != valency(f_.kinds[v]))
        fail("vertex '" + vertex_name(v) + "' has " + std::to_string(f_.slots[v].size()) + " incidences", line);
    return f_;
  }

 private:
  static constexpr int kUnset = -1000000;

  int add_vertex(VertexKind k) {
    f_.kinds.push_back(k);
    f_.slots.emplace_back();
    return f_.num_vertices() - 1;
  }
  int new_stub(int v) {
    f_.slots[v].push_back(f_.num_stubs());
    f_.stub_vertex.push_back(v);
    f_.link.push_back(kUnset);
    f_.stub_kind.push_back(EdgeKind::Normal);
    return f_.num_stubs() - 1;
  }
  void connect(int a, int b, EdgeKind k) {
    f_.link[a] = b;
    f_.link[b] = a;
    f_.stub_kind[a] = f_.stub_kind[b] = k;
  }

  int rung_count(const std::string& s, int line) {
    int v;
    if (s[0] == 'n') {
      if (!has_param_) fail("ladder length uses n but the schema has no parameter", line);
      v = n_;
      if (s.size() > 1) {
        if (s[1] != '+' && s[1] != '-') fail("bad rung count '" + s + "'", line);
        const int d = parse_int(s.substr(2), line);
        v += s[1] == '+' ? d : -d;
      }
    } else {
      v = parse_int(s, line);
    }
    if (v < 1) throw std::range_error("ladder length below one");
    return v;
  }

  // Rails a_1..a_c and b_1..b_c, rung i joins a_i and b_i. Slot orders:
  // a_i (toward a_{i+1}, toward a_{i-1}, rung), b_i (toward b_{i+1}, rung,
  // toward b_{i-1}). Ports 1,2 leave a_1,b_1 and ports 3,4 leave a_c,b_c.
  void add_ladder(const std::string& name, int c, int) {
    std::vector<int> a(c), b(c);
    std::vector<std::array<int, 3>> sa(c), sb(c);
    for (int i = 0; i < c; ++i) {
      a[i] = add_vertex(VertexKind::Normal);
      for (int j = 0; j < 3; ++j) sa[i][j] = new_stub(a[i]);
    }
    for (int i = 0; i < c; ++i) {
      b[i] = add_vertex(VertexKind::Normal);
      for (int j = 0; j < 3; ++j) sb[i][j] = new_stub(b[i]);
    }
    for (int i = 0; i < c; ++i) {
      connect(sa[i][2], sb[i][1], EdgeKind::Normal);
      if (i + 1 < c) {
        connect(sa[i][0], sa[i + 1][1], EdgeKind::Normal);
        connect(sb[i][0], sb[i + 1][2], EdgeKind::Normal);
      }
    }
    ladders_[name] = {sa[0][1], sb[0][2], sa[c - 1][0], sb[c - 1][0]};
    ports_free_[name] = {true, true, true, true};
    for (int i = 0; i < c; ++i) {
      ladder_vertex_[a[i]] = name;
      ladder_vertex_[b[i]] = name;
    }
  }

  int stub(const std::string& ref, int line) {
    if (auto dot = ref.find('.'); dot != std::string::npos) {
      const std::string lname = ref.substr(0, dot);
      auto it = ladders_.find(lname);
      if (it == ladders_.end()) fail("unknown ladder '" + lname + "'", line);
      const int port = parse_int(ref.substr(dot + 1), line);
      if (port < 1 || port > 4) fail("ladder ports are numbered 1..4", line);
      if (!ports_free_[lname][port - 1]) fail("ladder port " + ref + " used twice", line);
      ports_free_[lname][port - 1] = false;
      return it->second[port - 1];
    }
    auto it = names_.find(ref);
    if (it == names_.end()) fail("unknown vertex '" + ref + "'", line);
    return new_stub(it->second);
  }

  int end_index(const std::string& s, int line) {
    const int k = parse_int(s, line);
    if (k < 1 || k > f_.ends) fail("end " + s + " out of range", line);
    if (end_set_[k - 1]) fail("end " + s + " attached twice", line);
    end_set_[k - 1] = 1;
    return k - 1;
  }

  std::string vertex_name(int v) const {
    for (const auto& [n, id] : names_)
      if (id == v) return n;
    if (auto it = ladder_vertex_.find(v); it != ladder_vertex_.end()) return it->second;
    return std::to_string(v);
  }

  void apply_rotation(const RelationSchema::Line& ln) {
    const auto& t = ln.tokens;
    auto it = names_.find(t.size() > 1 ? t[1] : "");
    if (it == names_.end()) fail("rotation names an unknown vertex", ln.number);
    const int v = it->second;
    auto& slots = f_.slots[v];
    if (t.size() != slots.size() + 2) fail("rotation must list every incidence", ln.number);
    std::vector<int> order;
    for (std::size_t i = 2; i < t.size(); ++i) {
      std::vector<int> hits;
      for (int s : slots) {
        const int l = f_.link[s];
        bool hit;
        if (t[i][0] == '@') hit = l < 0 && -l - 1 == parse_int(t[i].substr(1), ln.number) - 1;
        else hit = l >= 0 && vertex_name(f_.stub_vertex[l]) == t[i];
        if (hit && std::find(order.begin(), order.end(), s) == order.end()) hits.push_back(s);
      }
      if (hits.size() != 1) fail("rotation entry '" + t[i] + "' is ambiguous or absent", ln.number);
      order.push_back(hits[0]);
    }
    slots = order;
  }

  Fragment f_;
  int n_;
  bool has_param_;
  std::vector<char> end_set_;
  std::map<std::string, int> names_;
  std::map<std::string, std::array<int, 4>> ladders_;
  std::map<std::string, std::array<bool, 4>> ports_free_;
  std::map<int, std::string> ladder_vertex_;
  std::vector<RelationSchema::Line> rotations_;
};

std::vector<int> kind_counts(const Fragment& f) {
  std::vector<int> c(4, 0);
  for (auto k : f.kinds) ++c[static_cast<int>(k)];
  return c;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<SchemaTerm> RelationSchema::instantiate(int n) const {
  if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  std::vector<SchemaTerm> out;
  for (const auto& src : sources_) {
    FragmentBuilder fb(ends, n, parametric());
    for (const auto& ln : src.lines) fb.line(ln);
    out.push_back({src.weight, fb.finish(src.lines.empty() ? 0 : src.lines.back().number)});
  }
  cache_.emplace(n, out);
  return out;
}

std::vector<int> RelationSchema::parameter_values(int max_vertices) const {
  if (!parametric()) return {0};
  std::vector<int> out;
  for (int n = param_min_; n <= max_vertices + 2; ++n) {
    if (param_parity_ != 2 && n % 2 != param_parity_) continue;
    try {
      auto terms = instantiate(n);
      if (terms.empty() || terms[0].fragment.num_vertices() > max_vertices) break;
      out.push_back(n);
    } catch (const std::range_error&) {
      continue;
    }
  }
  return out;
}

std::vector<RelationSchema> parse_schemas(const std::string& text) {
  std::vector<RelationSchema> out;
  std::vector<int> first_line;
  std::istringstream in(text);
  std::string raw;
  int no = 0;
  std::string canon_text;
  auto close = [&]() {
    if (out.empty()) return;
    auto& s = out.back();
    const int at = first_line.back();
    if (s.ends <= 0 && s.generator.empty()) fail("schema '" + s.name + "' lacks an ends line", at);
    if (!s.generator.empty()) {
      if (s.generator != "lambda") fail("unknown generator '" + s.generator + "'", at);
      if (!s.sources_.empty()) fail("generator schemas take no terms", at);
      return;
    }
    if (s.sources_.empty()) fail("schema '" + s.name + "' has no terms", at);
    int probe = 0;
    if (s.parametric()) {
      probe = s.param_min_;
      while (s.param_parity_ != 2 && probe % 2 != s.param_parity_) ++probe;
    }
    std::vector<SchemaTerm> terms;
    try {
      terms = s.instantiate(probe);
    } catch (const std::range_error&) {
      fail("schema '" + s.name + "' cannot be instantiated at its minimal parameter", at);
    }
    const auto& first = terms[0].fragment;
    if (first.num_vertices() == 0) fail("the first term of '" + s.name + "' has no vertices to match", at);
    for (int k = 0; k < first.ends; ++k)
      if (first.end_stub[k] < 0) fail("the first term of '" + s.name + "' may not pass ends through", at);
    for (const auto& t : terms)
      if (kind_counts(t.fragment) != kind_counts(first))
        fail("terms of '" + s.name + "' differ in their vertex content", at);
  };
  while (std::getline(in, raw)) {
    ++no;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    const std::string& op = tok[0];
    if (op == "schema") {
      close();
      if (!out.empty()) out.back().digest_ = fnv1a(canon_text);
      if (tok.size() != 2) fail("usage: schema <name>", no);
      out.emplace_back();
      out.back().name = tok[1];
      first_line.push_back(no);
      canon_text.clear();
    } else if (out.empty()) {
      fail("expected 'schema'", no);
    } else {
      auto& s = out.back();
      if (op == "provenance") {
        std::string rest = raw.substr(raw.find("provenance") + 10);
        rest.erase(0, rest.find_first_not_of(" \t"));
        s.provenance = rest;
        continue;
      }
      if (op == "ends") {
        if (tok.size() != 2) fail("usage: ends <k>", no);
        s.ends = parse_int(tok[1], no);
        if (s.ends < 0) fail("negative end count", no);
      } else if (op == "match") {
        if (tok.size() != 2 || (tok[1] != "oriented" && tok[1] != "any")) fail("usage: match oriented|any", no);
        s.oriented = tok[1] == "oriented";
      } else if (op == "symmetric") {
        if (tok.size() != 1) fail("usage: symmetric", no);
        s.symmetric = true;
      } else if (op == "generator") {
        if (tok.size() != 2) fail("usage: generator <name>", no);
        s.generator = tok[1];
      } else if (op == "param") {
        if (tok.size() != 3 && tok.size() != 5) fail("usage: param n odd|even|any [min <k>]", no);
        if (tok[1] != "n") fail("the parameter must be called n", no);
        if (tok[2] == "even") s.param_parity_ = 0;
        else if (tok[2] == "odd") s.param_parity_ = 1;
        else if (tok[2] == "any") s.param_parity_ = 2;
        else fail("parity must be odd, even or any", no);
        if (tok.size() == 5) {
          if (tok[3] != "min") fail("usage: param n odd|even|any [min <k>]", no);
          s.param_min_ = parse_int(tok[4], no);
        }
      } else if (op == "term") {
        if (tok.size() != 2) fail("usage: term <rational>", no);
        mpq_class w;
        try {
          w = mpq_class(tok[1]);
          w.canonicalize();
        } catch (const std::invalid_argument&) {
          fail("bad rational '" + tok[1] + "'", no);
        }
        if (w == 0) fail("zero weight", no);
        s.sources_.push_back({w, {}});
      } else {
        if (s.sources_.empty()) fail("'" + op + "' outside a term", no);
        s.sources_.back().lines.push_back({no, tok});
      }
      for (const auto& t : tok) canon_text += t + " ";
      canon_text += "\n";
    }
  }
  close();
  if (!out.empty()) out.back().digest_ = fnv1a(canon_text);
  return out;
}

std::vector<RelationSchema> load_schemas(const std::string& path, const std::string& extension) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const auto& e : fs::directory_iterator(path))
      if (e.path().extension() == extension) files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<RelationSchema> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw ParseError("cannot open " + f, 0);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      auto part = parse_schemas(ss.str());
      for (auto& s : part) out.push_back(std::move(s));
    } catch (const ParseError& e) {
      throw ParseError(f + ": " + e.detail(), e.line());
    }
  }
  return out;
}

const RelationSchema* find_schema(const std::vector<RelationSchema>& set, const std::string& name) {
  for (const auto& s : set)
    if (s.name == name) return &s;
  return nullptr;
}

void host_relations(const Graph& g, const RelationSchema& s, std::vector<LinearCombination>& out) {
  if (s.generator == "lambda") {
    lambda_relations(g, out);
    return;
  }
  std::optional<SignedCanonical> self;
  std::set<std::vector<int>> images;
  for (int n : s.parameter_values(g.num_vertices())) {
    const auto terms = s.instantiate(n);
    const Fragment& pat = terms[0].fragment;
    for (const auto& emb : match(g, pat, s.oriented)) {
      if (s.symmetric) {
        std::vector<int> key = emb.vertex;
        std::sort(key.begin(), key.end());
        std::vector<int> darts = emb.stub_dart;
        std::sort(darts.begin(), darts.end());
        key.push_back(-1);
        key.insert(key.end(), darts.begin(), darts.end());
        if (!images.insert(std::move(key)).second) continue;
      }
      LinearCombination v;
      bool ok = true;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (i == 0 && s.oriented) {
          // an oriented match reproduces the host itself
          if (!self) self = canonicalize(g);
          if (!self->zero()) v.add(self->code, t.weight * self->sign);
          continue;
        }
        auto h = substitute(g, pat, emb, t.fragment);
        if (!h) {
          ok = false;
          break;
        }
        auto sc = canonicalize(*h);
        if (!sc.zero()) v.add(sc.code, t.weight * sc.sign);
      }
      if (ok && !v.empty()) out.push_back(v.monic());
    }
  }
}

namespace {

// Every set of three edges whose removal separates g: a set is an edge cut
// exactly when it meets every cycle evenly, i.e. when the fundamental-cycle
// masks of its edges sum to zero.
std::set<std::array<int, 3>> three_cuts(const Graph& g) {
  const int n = g.num_vertices(), ne = g.num_edges();
  std::vector<int> parent_dart(n, -1), depth(n, -1), order;
  depth[0] = 0;
  order.push_back(0);
  std::vector<char> tree(ne, 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int d : g.darts(order[i])) {
      const int w = g.other_end(d);
      if (depth[w] >= 0) continue;
      depth[w] = depth[order[i]] + 1;
      parent_dart[w] = Graph::partner(d);
      tree[Graph::edge_of(d)] = 1;
      order.push_back(w);
    }
  std::vector<std::uint64_t> mask(ne, 0);
  int k = 0;
  for (int e = 0; e < ne; ++e) {
    if (tree[e]) continue;
    if (k == 64) throw CapacityError("cut search supports at most 64 independent cycles");
    const std::uint64_t bit = std::uint64_t{1} << k++;
    mask[e] ^= bit;
    for (int v : {g.vertex_of(2 * e), g.vertex_of(2 * e + 1)})
      for (; parent_dart[v] >= 0; v = g.other_end(parent_dart[v])) mask[Graph::edge_of(parent_dart[v])] ^= bit;
  }
  std::multimap<std::uint64_t, int> by_mask;
  for (int e = 0; e < ne; ++e) by_mask.emplace(mask[e], e);
  std::set<std::array<int, 3>> cuts;
  for (int e1 = 0; e1 < ne; ++e1)
    for (int e2 = e1 + 1; e2 < ne; ++e2) {
      auto [lo, hi] = by_mask.equal_range(mask[e1] ^ mask[e2]);
      for (auto it = lo; it != hi; ++it)
        if (it->second > e2) cuts.insert({e1, e2, it->second});
    }
  return cuts;
}


}  // namespace

void lambda_relations(const Graph& g, std::vector<LinearCombination>& out) {
  const int ne = g.num_edges(), nv = g.num_vertices();
  const auto cuts = three_cuts(g);
  std::vector<char> skip(ne, 0);
  static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  static const int psign[6] = {1, 1, 1, -1, -1, -1};
  std::optional<SignedCanonical> self;
  for (const auto& c : cuts) {
    for (int e : c) skip[e] = 1;
    std::vector<int> comp(nv, -1);
    int ncomp = 0;
    for (int r = 0; r < nv; ++r) {
      if (comp[r] >= 0) continue;
      std::vector<int> st{r};
      comp[r] = ncomp;
      while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int d : g.darts(v)) {
          if (skip[Graph::edge_of(d)]) continue;
          int w = g.other_end(d);
          if (comp[w] < 0) {
            comp[w] = ncomp;
            st.push_back(w);
          }
        }
      }
      ++ncomp;
    }
    for (int e : c) skip[e] = 0;
    for (int x = 0; x < ncomp; ++x) {
      int size = 0;
      bool legs = false;
      for (int v = 0; v < nv; ++v)
        if (comp[v] == x) {
          ++size;
          legs = legs || g.kind(v) != VertexKind::Normal;
        }
      if (legs || size < 3) continue;
      std::array<int, 3> inner, outer;
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        const int a = 2 * c[i], b = 2 * c[i] + 1;
        const bool ia = comp[g.vertex_of(a)] == x, ib = comp[g.vertex_of(b)] == x;
        if (ia == ib) ok = false;
        inner[i] = ia ? a : b;
        outer[i] = ia ? b : a;
      }
      if (!ok) continue;
      LinearCombination v;
      for (int p = 0; p < 6 && ok; ++p) {
        if (p == 0) {
          if (!self) self = canonicalize(g);
          if (!self->zero()) v.add(self->code, self->sign);
          continue;
        }
        std::vector<std::pair<int, int>> pairs;
        std::vector<EdgeKind> kinds;
        for (int e = 0; e < ne; ++e)
          if (e != c[0] && e != c[1] && e != c[2]) {
            pairs.emplace_back(2 * e, 2 * e + 1);
            kinds.push_back(g.edge_kind(e));
          }
        for (int i = 0; i < 3; ++i) {
          pairs.emplace_back(outer[i], inner[perms[p][i]]);
          kinds.push_back(g.edge_kind(c[i]));
        }
        auto h = rewire(g, pairs, kinds);
        if (!h) {
          ok = false;
          break;
        }
        auto sc = canonicalize(*h);
        if (!sc.zero()) v.add(sc.code, psign[p] * sc.sign);
      }
      if (ok && !v.empty()) out.push_back(v.monic());
    }
  }
}

std::vector<LinearCombination> relation_vectors(DiagramEnumerator& en, int m, int u,
                                                const std::vector<const RelationSchema*>& schemas,
                                                const RelationOptions& opt) {
  std::vector<LinearCombination> out;
  if (m < 1 || u < 0 || 2 * m - u < 0) return out;
  for (const auto& code : en.graphs(2 * m - u, u)) {
    const Graph g = decode(code);
    for (const auto* s : schemas) host_relations(g, *s, out);
    if (out.size() > opt.capacity)
      throw CapacityError("relation generation at degree (" + std::to_string(m) + "," + std::to_string(u) +
                          ") exceeds " + std::to_string(opt.capacity) + " vectors");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace vg
