#include "canon.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace vg {

namespace {

constexpr int kMaxVertices = 250;

struct Neighbor {
  int vertex;
  int weight;  // normal multiplicity + 16 * photon multiplicity (loops counted once per loop)
};

struct Signature {
  std::array<std::uint32_t, 4> key{};
  int len = 0;
  friend bool operator<(const Signature& a, const Signature& b) {
    if (a.len != b.len) return a.len < b.len;
    return a.key < b.key;
  }
  friend bool operator==(const Signature& a, const Signature& b) { return a.len == b.len && a.key == b.key; }
};

struct Partition {
  std::vector<int> lab;    // vertices ordered by cell
  std::vector<int> cells;  // start positions, increasing
};

class Canonizer {
 public:
  explicit Canonizer(const Graph& g) : g_(g), n_(g.num_vertices()) {
    if (n_ > kMaxVertices) throw CapacityError("graph too large to canonicalize (" + std::to_string(n_) + " vertices)");
    nbrs_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      for (int d : g.darts(v)) {
        const int w = g.other_end(d);
        const int inc = g.edge_kind(Graph::edge_of(d)) == EdgeKind::Photon ? 16 : 1;
        if (w == v && (d & 1)) continue;  // count each loop once
        auto it = std::find_if(nbrs_[v].begin(), nbrs_[v].end(), [&](const Neighbor& x) { return x.vertex == w; });
        if (it == nbrs_[v].end()) nbrs_[v].push_back({w, inc});
        else it->weight += inc;
      }
    }
    // Edge list with the canonical tie-break key (edge id) for parallel edges.
    cell_of_.assign(n_, 0);
  }

  void run() {
    Partition p;
    p.lab.resize(n_);
    std::iota(p.lab.begin(), p.lab.end(), 0);
    std::stable_sort(p.lab.begin(), p.lab.end(),
                     [&](int a, int b) { return g_.kind(a) < g_.kind(b); });
    for (int i = 0; i < n_; ++i)
      if (i == 0 || g_.kind(p.lab[i]) != g_.kind(p.lab[i - 1])) p.cells.push_back(i);
    std::vector<int> prefix;
    if (n_ > 0) search(std::move(p), prefix);
  }

  const std::vector<std::uint8_t>& best_code() const { return best_; }
  const std::vector<int>& best_lab() const { return best_lab_; }  // vertex -> canonical label
  const std::vector<std::vector<int>>& auts() const { return auts_; }

 private:
  void compute_cell_of(const Partition& p) {
    const int nc = static_cast<int>(p.cells.size());
    for (int c = 0; c < nc; ++c) {
      const int s = p.cells[c], e = c + 1 < nc ? p.cells[c + 1] : n_;
      for (int i = s; i < e; ++i) cell_of_[p.lab[i]] = s;
    }
  }

  Signature signature(int v) const {
    Signature s;
    for (const auto& nb : nbrs_[v])
      s.key[s.len++] = (static_cast<std::uint32_t>(cell_of_[nb.vertex]) << 8) | static_cast<std::uint32_t>(nb.weight);
    std::sort(s.key.begin(), s.key.begin() + s.len);
    return s;
  }

  void refine(Partition& p) {
    std::vector<std::pair<Signature, int>> buf;
    for (;;) {
      compute_cell_of(p);
      std::vector<int> next;
      next.reserve(n_);
      bool changed = false;
      const int nc = static_cast<int>(p.cells.size());
      for (int c = 0; c < nc; ++c) {
        const int s = p.cells[c], e = c + 1 < nc ? p.cells[c + 1] : n_;
        next.push_back(s);
        if (e - s == 1) continue;
        buf.clear();
        for (int i = s; i < e; ++i) buf.emplace_back(signature(p.lab[i]), p.lab[i]);
        std::sort(buf.begin(), buf.end(), [](const auto& a, const auto& b) {
          if (a.first == b.first) return a.second < b.second;
          return a.first < b.first;
        });
        for (int i = s; i < e; ++i) {
          p.lab[i] = buf[i - s].second;
          if (i > s && !(buf[i - s].first == buf[i - s - 1].first)) {
            next.push_back(i);
            changed = true;
          }
        }
      }
      p.cells = std::move(next);
      if (!changed) return;
    }
  }

  std::vector<std::uint8_t> leaf_code(const std::vector<int>& label) const {
    std::vector<std::uint32_t> keys;
    keys.reserve(g_.num_edges());
    for (int e = 0; e < g_.num_edges(); ++e) {
      int a = label[g_.vertex_of(2 * e)], b = label[g_.vertex_of(2 * e + 1)];
      if (a > b) std::swap(a, b);
      keys.push_back((static_cast<std::uint32_t>(a) << 16) | (static_cast<std::uint32_t>(b) << 8) |
                     static_cast<std::uint32_t>(g_.edge_kind(e)));
    }
    std::sort(keys.begin(), keys.end());
    std::vector<std::uint8_t> code;
    code.reserve(2 + n_ + 3 * keys.size());
    code.push_back(static_cast<std::uint8_t>(n_));
    code.push_back(static_cast<std::uint8_t>(keys.size()));
    std::vector<std::uint8_t> kinds(n_);
    for (int v = 0; v < n_; ++v) kinds[label[v]] = static_cast<std::uint8_t>(g_.kind(v));
    code.insert(code.end(), kinds.begin(), kinds.end());
    for (auto k : keys) {
      code.push_back(static_cast<std::uint8_t>(k >> 16));
      code.push_back(static_cast<std::uint8_t>(k >> 8));
      code.push_back(static_cast<std::uint8_t>(k));
    }
    return code;
  }

  void leaf(const Partition& p) {
    std::vector<int> label(n_);
    for (int i = 0; i < n_; ++i) label[p.lab[i]] = i;
    auto code = leaf_code(label);
    if (best_.empty() || code < best_) {
      best_ = std::move(code);
      best_lab_ = std::move(label);
      best_inv_ = p.lab;
    } else if (code == best_) {
      std::vector<int> gamma(n_);
      for (int v = 0; v < n_; ++v) gamma[v] = best_inv_[label[v]];
      bool identity = true;
      for (int v = 0; v < n_ && identity; ++v) identity = gamma[v] == v;
      if (!identity) auts_.push_back(std::move(gamma));
    }
  }

  static int find(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  }

  void search(Partition p, std::vector<int>& prefix) {
    refine(p);
    if (static_cast<int>(p.cells.size()) == n_) {
      leaf(p);
      return;
    }
    const int nc = static_cast<int>(p.cells.size());
    int target = -1, tsize = n_ + 1;
    for (int c = 0; c < nc; ++c) {
      const int s = p.cells[c], e = c + 1 < nc ? p.cells[c + 1] : n_;
      if (e - s > 1 && e - s < tsize) {
        target = c;
        tsize = e - s;
      }
    }
    const int s = p.cells[target];
    std::vector<int> members(p.lab.begin() + s, p.lab.begin() + s + tsize);
    std::sort(members.begin(), members.end());
    std::vector<int> tried;
    std::vector<int> uf(n_);
    for (int v : members) {
      if (!tried.empty() && !auts_.empty()) {
        std::iota(uf.begin(), uf.end(), 0);
        for (const auto& gamma : auts_) {
          bool fixes = true;
          for (int x : prefix)
            if (gamma[x] != x) {
              fixes = false;
              break;
            }
          if (!fixes) continue;
          for (int x = 0; x < n_; ++x) {
            int a = find(uf, x), b = find(uf, gamma[x]);
            if (a != b) uf[a] = b;
          }
        }
        bool skip = false;
        for (int u : tried)
          if (find(uf, u) == find(uf, v)) {
            skip = true;
            break;
          }
        if (skip) continue;
      }
      tried.push_back(v);
      Partition q = p;
      auto it = std::find(q.lab.begin() + s, q.lab.begin() + s + tsize, v);
      std::iter_swap(q.lab.begin() + s, it);
      q.cells.insert(q.cells.begin() + target + 1, s + 1);
      prefix.push_back(v);
      search(std::move(q), prefix);
      prefix.pop_back();
    }
  }

  const Graph& g_;
  int n_;
  std::vector<std::vector<Neighbor>> nbrs_;
  std::vector<int> cell_of_;
  std::vector<std::uint8_t> best_;
  std::vector<int> best_lab_, best_inv_;
  std::vector<std::vector<int>> auts_;
};

// Rank of edge e among the edges parallel to it (same endpoints and kind),
// ordered by edge id.
std::vector<int> parallel_rank(const Graph& g) {
  std::vector<int> rank(g.num_edges(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    const int a = g.vertex_of(2 * e), b = g.vertex_of(2 * e + 1);
    for (int f = 0; f < e; ++f) {
      const int c = g.vertex_of(2 * f), d = g.vertex_of(2 * f + 1);
      if (g.edge_kind(f) == g.edge_kind(e) && ((a == c && b == d) || (a == d && b == c))) ++rank[e];
    }
  }
  return rank;
}

bool same_cyclic_order(const std::array<int, 3>& a, std::span<const int> b) {
  for (int s = 0; s < 3; ++s)
    if (a[0] == b[s] && a[1] == b[(s + 1) % 3] && a[2] == b[(s + 2) % 3]) return true;
  return false;
}

// Orientation parity (+1/-1) of a vertex automorphism.
int automorphism_parity(const Graph& g, const std::vector<int>& gamma, const std::vector<int>& prank) {
  const int ne = g.num_edges();
  // For every edge, find the image edge with the same parallel rank.
  std::vector<int> dart_image(g.num_darts(), -1);
  for (int e = 0; e < ne; ++e) {
    const int a = g.vertex_of(2 * e), b = g.vertex_of(2 * e + 1);
    const int ga = gamma[a], gb = gamma[b];
    for (int f = 0; f < ne; ++f) {
      if (g.edge_kind(f) != g.edge_kind(e) || prank[f] != prank[e]) continue;
      const int c = g.vertex_of(2 * f), d = g.vertex_of(2 * f + 1);
      if (c == ga && d == gb) {
        dart_image[2 * e] = 2 * f;
        dart_image[2 * e + 1] = 2 * f + 1;
        break;
      }
      if (c == gb && d == ga) {
        dart_image[2 * e] = 2 * f + 1;
        dart_image[2 * e + 1] = 2 * f;
        break;
      }
    }
  }
  int parity = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.kind(v) != VertexKind::Normal) continue;
    auto r = g.darts(v);
    std::array<int, 3> img{dart_image[r[0]], dart_image[r[1]], dart_image[r[2]]};
    if (!same_cyclic_order(img, g.darts(gamma[v]))) parity = -parity;
  }
  return parity;
}

bool locally_degenerate(const Graph& g) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.kind(v) != VertexKind::Normal) continue;
    auto ds = g.darts(v);
    for (int i = 0; i < 3; ++i) {
      const int wi = g.other_end(ds[i]);
      if (wi == v) return true;  // loop at an oriented vertex
      for (int j = i + 1; j < 3; ++j) {
        const int wj = g.other_end(ds[j]);
        if (wi == wj && g.kind(wi) != VertexKind::Normal &&
            g.edge_kind(Graph::edge_of(ds[i])) == g.edge_kind(Graph::edge_of(ds[j])))
          return true;  // swapping parallel edges to an unordered vertex reverses v alone
      }
    }
  }
  return false;
}

}  // namespace

SignedCanonical canonicalize(const Graph& g) {
  Canonizer c(g);
  c.run();
  SignedCanonical out;
  const auto& bc = c.best_code();
  out.code.assign(bc.begin(), bc.end());
  if (locally_degenerate(g)) {
    out.sign = 0;
    return out;
  }
  const auto prank = parallel_rank(g);
  for (const auto& gamma : c.auts())
    if (automorphism_parity(g, gamma, prank) < 0) {
      out.sign = 0;
      return out;
    }
  // Canonical dart numbering: edges sorted by (low label, high label, kind, parallel rank).
  const auto& label = c.best_lab();
  const int ne = g.num_edges();
  std::vector<std::tuple<int, int, int, int, int>> order;
  order.reserve(ne);
  for (int e = 0; e < ne; ++e) {
    int a = label[g.vertex_of(2 * e)], b = label[g.vertex_of(2 * e + 1)];
    order.emplace_back(std::min(a, b), std::max(a, b), static_cast<int>(g.edge_kind(e)), prank[e], e);
  }
  std::sort(order.begin(), order.end());
  std::vector<int> cdart(g.num_darts());
  for (int k = 0; k < ne; ++k) {
    const int e = std::get<4>(order[k]);
    const bool first_low = label[g.vertex_of(2 * e)] <= label[g.vertex_of(2 * e + 1)];
    cdart[2 * e] = first_low ? 2 * k : 2 * k + 1;
    cdart[2 * e + 1] = first_low ? 2 * k + 1 : 2 * k;
  }
  int sign = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.kind(v) != VertexKind::Normal) continue;
    auto r = g.darts(v);
    std::array<int, 3> img{cdart[r[0]], cdart[r[1]], cdart[r[2]]};
    std::array<int, 3> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    if (!same_cyclic_order(img, sorted)) sign = -sign;
  }
  out.sign = sign;
  return out;
}

Graph decode(const std::string& code) {
  if (code.size() < 2) throw StructureError("canonical code too short");
  const auto* b = reinterpret_cast<const std::uint8_t*>(code.data());
  const int n = b[0], ne = b[1];
  if (code.size() != static_cast<std::size_t>(2 + n + 3 * ne)) throw StructureError("canonical code length mismatch");
  GraphBuilder gb;
  for (int v = 0; v < n; ++v) {
    if (b[2 + v] > 3) throw StructureError("bad vertex kind in code");
    gb.add_vertex(static_cast<VertexKind>(b[2 + v]));
  }
  for (int k = 0; k < ne; ++k) {
    const auto* t = b + 2 + n + 3 * k;
    if (t[0] >= n || t[1] >= n || t[2] > 1) throw StructureError("bad edge in code");
    gb.add_edge(t[0], t[1], static_cast<EdgeKind>(t[2]));
  }
  // Darts were appended in increasing order, so every rotation is already sorted.
  return std::move(gb).build(false);
}

std::string to_hex(const std::string& code) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(2 * code.size());
  for (unsigned char c : code) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string from_hex(const std::string& hex) {
  if (hex.size() % 2) throw StructureError("hex code has odd length");
  auto val = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw StructureError(std::string("bad hex digit '") + c + "'");
  };
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) out.push_back(static_cast<char>(val(hex[i]) * 16 + val(hex[i + 1])));
  return out;
}

AutomorphismInfo automorphisms(const Graph& g) {
  Canonizer c(g);
  c.run();
  AutomorphismInfo info;
  const auto prank = parallel_rank(g);
  for (const auto& gamma : c.auts()) {
    info.generators.push_back(gamma);
    info.parity.push_back(automorphism_parity(g, gamma, prank));
  }
  return info;
}

}  // namespace vg
