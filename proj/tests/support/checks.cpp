#include "checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "bounds.hpp"
#include "canon.hpp"
#include "ladder.hpp"
#include "quotient.hpp"

namespace vgtest {

using namespace vg;

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

std::size_t oracle_graph_count(int t, int u) {
  const int n = t + u;
  if (n == 0) return 0;
  std::vector<int> deg(n, 3);
  for (int i = t; i < n; ++i) deg[i] = 1;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  const auto pt = all_permutations(t), pu = all_permutations(u);
  std::set<std::vector<int>> classes;

  auto connected = [&] {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (a[v][w] && !seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  };
  auto record = [&] {
    if (!connected()) return;
    std::vector<int> best;
    std::vector<int> perm(n);
    for (const auto& p : pt)
      for (const auto& q : pu) {
        for (int i = 0; i < t; ++i) perm[i] = p[i];
        for (int i = 0; i < u; ++i) perm[t + i] = t + q[i];
        std::vector<int> key;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) key.push_back(a[perm[i]][perm[j]]);
        if (best.empty() || key < best) best = std::move(key);
      }
    classes.insert(best);
  };
  std::vector<int> left = deg;
  std::function<void(int, int)> fill = [&](int i, int j) {
    if (i == n) {
      record();
      return;
    }
    if (j == n) {
      if (left[i] == 0) fill(i + 1, i + 2);
      return;
    }
    for (int k = 0; k <= std::min(left[i], left[j]); ++k) {
      a[i][j] = a[j][i] = k;
      left[i] -= k;
      left[j] -= k;
      fill(i, j + 1);
      left[i] += k;
      left[j] += k;
    }
    a[i][j] = a[j][i] = 0;
  };
  fill(0, 1);
  return classes.size();
}

std::size_t oracle_embedding_count(const Graph& g, const Fragment& f, bool oriented) {
  const int nv = f.num_vertices();
  std::vector<int> image(nv, -1);
  std::vector<int> dart(f.num_stubs(), -1);
  std::vector<char> used(g.num_vertices(), 0);
  std::size_t count = 0;

  auto consistent = [&] {
    for (int s = 0; s < f.num_stubs(); ++s) {
      if (g.edge_kind(Graph::edge_of(dart[s])) != f.stub_kind[s]) return false;
      const int l = f.link[s];
      if (l >= 0 && Graph::partner(dart[s]) != dart[l]) return false;
    }
    return true;
  };
  std::function<void(int)> place = [&](int i) {
    if (i == nv) {
      count += consistent();
      return;
    }
    const auto& slots = f.slots[i];
    const int k = static_cast<int>(slots.size());
    for (int hv = 0; hv < g.num_vertices(); ++hv) {
      if (used[hv] || g.kind(hv) != f.kinds[i] || static_cast<int>(g.darts(hv).size()) != k) continue;
      const auto darts = g.darts(hv);
      used[hv] = 1;
      for (const auto& p : all_permutations(k)) {
        if (oriented && f.kinds[i] == VertexKind::Normal) {
          // keep cyclic rotations only
          bool rotation = true;
          for (int j = 0; j < k; ++j) rotation &= p[(j + 1) % k] == (p[j] + 1) % k;
          if (!rotation) continue;
        }
        for (int j = 0; j < k; ++j) dart[slots[j]] = darts[p[j]];
        place(i + 1);
      }
      used[hv] = 0;
    }
  };
  place(0);
  return count;
}

namespace {

using Matrix = std::vector<std::vector<long>>;

struct Tensor {
  std::vector<int> axes;
  std::vector<int> dims;
  std::vector<long> data;
  std::size_t size() const { return data.size(); }
};

Tensor contract(const Tensor& a, const Tensor& b) {
  std::vector<int> axes, dims;
  std::vector<std::size_t> sa, sb, sr;
  auto strides = [](const Tensor& t) {
    std::vector<std::size_t> s(t.axes.size());
    std::size_t x = 1;
    for (std::size_t i = t.axes.size(); i-- > 0;) {
      s[i] = x;
      x *= t.dims[i];
    }
    return s;
  };
  const auto ta = strides(a), tb = strides(b);
  Tensor r;
  for (std::size_t i = 0; i < a.axes.size(); ++i)
    if (std::find(b.axes.begin(), b.axes.end(), a.axes[i]) == b.axes.end()) {
      r.axes.push_back(a.axes[i]);
      r.dims.push_back(a.dims[i]);
    }
  for (std::size_t i = 0; i < b.axes.size(); ++i)
    if (std::find(a.axes.begin(), a.axes.end(), b.axes[i]) == a.axes.end()) {
      r.axes.push_back(b.axes[i]);
      r.dims.push_back(b.dims[i]);
    }
  const auto tr = strides(r);
  // every axis of the union with its strides in a, b and the result
  for (std::size_t i = 0; i < a.axes.size(); ++i) {
    axes.push_back(a.axes[i]);
    dims.push_back(a.dims[i]);
  }
  for (std::size_t i = 0; i < b.axes.size(); ++i)
    if (std::find(a.axes.begin(), a.axes.end(), b.axes[i]) == a.axes.end()) {
      axes.push_back(b.axes[i]);
      dims.push_back(b.dims[i]);
    }
  auto stride_in = [](const Tensor& t, const std::vector<std::size_t>& s, int axis) -> std::size_t {
    auto it = std::find(t.axes.begin(), t.axes.end(), axis);
    return it == t.axes.end() ? 0 : s[it - t.axes.begin()];
  };
  for (int ax : axes) {
    sa.push_back(stride_in(a, ta, ax));
    sb.push_back(stride_in(b, tb, ax));
    sr.push_back(stride_in(r, tr, ax));
  }
  std::size_t total = 1;
  for (int d : r.dims) total *= d;
  r.data.assign(total, 0);
  const int k = static_cast<int>(axes.size());
  std::vector<int> idx(k, 0);
  std::size_t ia = 0, ib = 0, ir = 0;
  while (true) {
    r.data[ir] += a.data[ia] * b.data[ib];
    int j = k - 1;
    for (; j >= 0; --j) {
      if (++idx[j] < dims[j]) {
        ia += sa[j];
        ib += sb[j];
        ir += sr[j];
        break;
      }
      ia -= sa[j] * (dims[j] - 1);
      ib -= sb[j] * (dims[j] - 1);
      ir -= sr[j] * (dims[j] - 1);
      idx[j] = 0;
    }
    if (j < 0) break;
  }
  return r;
}

long trace3(const Matrix& x, const Matrix& y, const Matrix& z, int n) {
  long t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x[i][j])
        for (int k = 0; k < n; ++k) t += x[i][j] * y[j][k] * z[k][i];
  return t;
}

}  // namespace

mpq_class oracle_tensor_weight(const Graph& g, const std::vector<int>& order, Algebra alg, int n) {
  // basis of the algebra and the inverse metric (scaled to integers)
  std::vector<Matrix> basis;
  long metric_scale_den = 1;  // inverse metric = stored / den
  std::vector<std::vector<long>> ginv;
  auto zero = [&] { return Matrix(n, std::vector<long>(n, 0)); };
  if (alg == Algebra::GL) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        auto e = zero();
        e[i][j] = 1;
        basis.push_back(e);
      }
    const int d = n * n;
    ginv.assign(d, std::vector<long>(d, 0));
    // tr(E_ij E_kl) = [j = k][i = l]; the metric is its own inverse
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ginv[i * n + j][j * n + i] = 1;
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto e = zero();
        e[i][j] = 1;
        e[j][i] = -1;
        basis.push_back(e);
      }
    const int d = static_cast<int>(basis.size());
    // tr(A A) = -2: inverse metric -1/2
    ginv.assign(d, std::vector<long>(d, 0));
    for (int i = 0; i < d; ++i) ginv[i][i] = -1;
    metric_scale_den = 2;
  }
  const int d = static_cast<int>(basis.size());
  const int seg0 = g.num_darts();
  const int u = static_cast<int>(order.size());

  std::vector<Tensor> net;
  for (int e = 0; e < g.num_edges(); ++e) {
    Tensor t{{2 * e, 2 * e + 1}, {d, d}, {}};
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) t.data.push_back(ginv[a][b]);
    net.push_back(std::move(t));
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.kind(v) != VertexKind::Normal) continue;
    auto dv = g.darts(v);
    Tensor t{{dv[0], dv[1], dv[2]}, {d, d, d}, {}};
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          t.data.push_back(trace3(basis[a], basis[b], basis[c], n) - trace3(basis[a], basis[c], basis[b], n));
    net.push_back(std::move(t));
  }
  for (int k = 0; k < u; ++k) {
    const int x = g.darts(order[k])[0];
    if (u == 1) {
      Tensor t{{x}, {d}, {}};
      for (int a = 0; a < d; ++a) {
        long tr = 0;
        for (int i = 0; i < n; ++i) tr += basis[a][i][i];
        t.data.push_back(tr);
      }
      net.push_back(std::move(t));
      continue;
    }
    Tensor t{{x, seg0 + k, seg0 + (k + 1) % u}, {d, n, n}, {}};
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.data.push_back(basis[a][i][j]);
    net.push_back(std::move(t));
  }

  while (net.size() > 1) {
    std::size_t bi = 0, bj = 1, best = SIZE_MAX;
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j) {
        std::size_t shared = 0, size = 1;
        for (std::size_t x = 0; x < net[i].axes.size(); ++x) {
          const bool s = std::count(net[j].axes.begin(), net[j].axes.end(), net[i].axes[x]);
          shared += s;
          if (!s) size *= net[i].dims[x];
        }
        for (std::size_t x = 0; x < net[j].axes.size(); ++x)
          if (!std::count(net[i].axes.begin(), net[i].axes.end(), net[j].axes[x])) size *= net[j].dims[x];
        if (shared == 0 && !(net[i].axes.empty() || net[j].axes.empty())) continue;
        if (size < best) {
          best = size;
          bi = i;
          bj = j;
        }
      }
    Tensor r = contract(net[bi], net[bj]);
    net.erase(net.begin() + bj);
    net[bi] = std::move(r);
  }
  mpq_class value(net[0].data[0]);
  for (int e = 0; e < g.num_edges(); ++e) value /= metric_scale_den;
  return value;
}

std::size_t oracle_rank(const SparseMatrix& m) {
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : m.rows) {
    std::vector<mpz_class> r(m.ncols, 0);
    for (auto [c, v] : row) r[c] = static_cast<long>(v);
    a.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (int col = 0; col < m.ncols && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][col] == 0) continue;
      const mpz_class f = a[r][col], p = a[rank][col];
      for (int c = col; c < m.ncols; ++c) a[r][c] = a[r][c] * p - a[rank][c] * f;
      mpz_class gcd = 0;
      for (const auto& x : a[r]) gcd = ::gcd(gcd, x);
      if (gcd > 1)
        for (auto& x : a[r]) x /= gcd;
    }
    ++rank;
  }
  return rank;
}

Fragment vertex_fragment() {
  Fragment f;
  f.ends = 3;
  f.kinds = {VertexKind::Normal};
  f.slots = {{0, 1, 2}};
  f.stub_vertex = {0, 0, 0};
  f.link = {-1, -2, -3};
  f.stub_kind.assign(3, EdgeKind::Normal);
  f.end_stub = {0, 1, 2};
  f.end_pass = {-1, -1, -1};
  f.end_kind.assign(3, EdgeKind::Normal);
  return f;
}

Corpus::Corpus(const std::string& data_dir) : schemas(load_schemas(data_dir + "/schemas")) {
  ihx = find_schema(schemas, "IHX");
  x = find_schema(schemas, "x");
  if (!ihx || !x) throw std::runtime_error("IHX and x schemas are required in " + data_dir);
}

namespace {

std::vector<int> legs_of(const Graph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.kind(v) == VertexKind::Univalent) out.push_back(v);
  return out;
}

std::string name(int m, int u) { return "(" + std::to_string(m) + "," + std::to_string(u) + ")"; }

}  // namespace

Tally ihx_weights_vanish(DiagramEnumerator& en, const Corpus& c, std::size_t min_vectors, const std::vector<int>& ns) {
  Tally t;
  const std::vector<std::pair<int, int>> degrees{{2, 0}, {3, 0}, {2, 2}, {3, 2}, {4, 2}, {3, 4}, {4, 0},
                                                 {4, 4}, {5, 2}, {5, 0}, {4, 6}, {5, 4}, {6, 2}};
  for (auto [m, u] : degrees) {
    if (t.checked >= min_vectors) break;
    for (const auto& v : relation_vectors(en, m, u, c.bb())) {
      for (Algebra a : {Algebra::GL, Algebra::SO}) {
        const auto w = symmetric_weight(v, a);
        for (int n : ns)
          if (w(n) != 0) t.fail(to_string(a) + " weight " + w.to_string() + " of an IHX vector at " + name(m, u));
      }
      ++t.checked;
    }
  }
  return t;
}

Tally reduction_order_independence(DiagramEnumerator& en, std::size_t sequences, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  std::vector<Graph> pool;
  for (auto [m, u] : std::vector<std::pair<int, int>>{{6, 2}, {6, 4}, {7, 2}, {7, 4}, {6, 0}, {7, 0}, {8, 4}})
    for (const auto& code : en.diagrams(m, u)) {
      Graph g = decode(code);
      if (delta(g).f > 0) pool.push_back(std::move(g));
    }
  if (pool.empty()) {
    t.fail("no diagram with a free square");
    return t;
  }
  std::map<std::size_t, SignedCanonical> first;
  for (std::size_t s = 0; s < sequences; ++s) {
    const std::size_t i = s % pool.size();
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    const auto r = complete_reduction(pool[i], pick);
    auto canon = canonicalize(r.graph);
    canon.sign *= r.sign;
    if (delta(r.graph).f != 0) t.fail("reduction left a free square");
    auto [it, fresh] = first.emplace(i, canon);
    if (!fresh && !(it->second == canon)) t.fail("two reduction orders disagree on " + to_hex(canonicalize(pool[i]).code));
    ++t.checked;
  }
  return t;
}

Tally delta_bounds(DiagramEnumerator& en, int max_m) {
  Tally t;
  for (int m = 1; m <= max_m; ++m)
    for (int u = 0; u <= m + 1; ++u)
      for (const auto& code : en.diagrams(m, u)) {
        const Graph g = decode(code);
        const Delta d = delta(g);
        const int f = d.f, o = d.o, e = d.e;
        const bool ok = f >= 0 && o >= 0 && e >= 0 && (o + e > 0 || f == 0) && 4 * f + 6 * o + 4 * e <= 2 * m - u &&
                        2 * f + 2 * o + e <= m - u + 1;
        if (!ok || !admissible(d, m, u)) t.fail("delta " + to_string(d) + " not admissible at " + name(m, u));
        if (g.num_edges() - g.num_vertices() + 1 != m - u + 1) t.fail("cyclomatic number at " + name(m, u));
        ++t.checked;
      }
  return t;
}

Tally square_tunneling(DiagramEnumerator& en, const Corpus& c, const std::vector<std::pair<int, int>>& cells,
                       std::size_t samples, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  struct Case {
    Graph g;
    int m, u;
  };
  std::vector<Case> pool;
  for (auto [m, u] : cells)
    for (const auto& code : en.diagrams(m, u)) {
      Graph g = decode(code);
      if (ladder_report(g).maximal.size() >= 2) pool.push_back({std::move(g), m, u});
    }
  std::shuffle(pool.begin(), pool.end(), rng);
  if (pool.size() > samples) pool.resize(samples);
  std::map<std::pair<int, int>, std::vector<std::pair<LinearCombination, std::string>>> by_cell;
  for (const auto& cs : pool) {
    const auto ladders = ladder_report(cs.g).maximal;
    const std::size_t i = rng() % ladders.size();
    std::size_t j = rng() % (ladders.size() - 1);
    if (j >= i) ++j;
    LinearCombination v;
    for (auto [l, s] : {std::make_pair(i, 1), std::make_pair(j, -1)}) {
      const auto r = insert_square(cs.g, ladders[l]);
      const auto canon = canonicalize(r.graph);
      if (!canon.zero()) v.add(canon.code, s * r.sign * canon.sign);
    }
    by_cell[{cs.m + 2, cs.u}].emplace_back(std::move(v), to_hex(canonicalize(cs.g).code));
  }
  // All differences lie in the relation span iff appending them keeps the rank.
  for (const auto& [cell, vs] : by_cell) {
    const RelationMatrix rm = relation_matrix(en, cell.first, cell.second, c.b());
    const auto base = rank(rm.matrix());
    RelationMatrix all = rm;
    for (const auto& [v, _] : vs) all.add(v);
    if (rank(all.matrix()) != base)
      for (const auto& [v, hex] : vs) {
        RelationMatrix one = rm;
        one.add(v);
        if (rank(one.matrix()) != base) t.fail("square insertions differ in B at " + name(cell.first, cell.second) + " for " + hex);
      }
    t.checked += vs.size();
  }
  return t;
}

Tally sqnum_identity(int max_n) {
  Tally t;
  for (long n = 0; n <= max_n; ++n) {
    if (1 + sqnum(n) + n / 2 != sqnum(n + 3)) t.fail("n = " + std::to_string(n));
    ++t.checked;
  }
  return t;
}

Tally state_sums(DiagramEnumerator& en, int max_trivalent, const std::vector<int>& gl_ns, const std::vector<int>& so_ns) {
  Tally t;
  for (int m = 1; 2 * m <= max_trivalent + 2 * m; ++m) {
    bool any = false;
    for (int u = 0; u <= m + 1; ++u) {
      if (2 * m - u > max_trivalent) continue;
      any = true;
      for (const auto& code : en.diagrams(m, u)) {
        const Graph g = decode(code);
        const auto order = legs_of(g);
        const auto cs = glue_legs_to_circle(g, order);
        for (auto [a, ns] : {std::make_pair(Algebra::GL, &gl_ns), std::make_pair(Algebra::SO, &so_ns)}) {
          const auto w = a == Algebra::GL ? gl_weight(cs) : so_weight(cs);
          for (int n : *ns) {
            const mpq_class want = oracle_tensor_weight(g, order, a, n);
            if (w(n) != want)
              t.fail(to_string(a) + " state sum " + w(n).get_str() + " vs tensor " + want.get_str() + " at N=" +
                     std::to_string(n) + " on " + to_hex(code));
            ++t.checked;
          }
        }
      }
    }
    if (!any) break;
  }
  return t;
}

Tally enumeration(DiagramEnumerator& en, int max_m) {
  Tally t;
  for (int m = 1; m <= max_m; ++m)
    for (int u = 0; u <= 2 * m; ++u) {
      const int tri = 2 * m - u;
      const std::size_t got = en.graphs(tri, u).size(), want = oracle_graph_count(tri, u);
      if (got != want)
        t.fail("graphs" + name(tri, u) + ": " + std::to_string(got) + " vs oracle " + std::to_string(want));
      ++t.checked;
    }
  return t;
}

Tally embeddings(DiagramEnumerator& en, const Corpus& c, int max_m) {
  Tally t;
  const Fragment vertex = vertex_fragment();
  const Fragment ihx = c.ihx->instantiate().front().fragment;
  for (int m = 1; m <= max_m; ++m)
    for (int u = 0; u <= m + 1; ++u)
      for (const auto& code : en.graphs(2 * m - u, u)) {
        const Graph g = decode(code);
        for (const Fragment* f : {&vertex, &ihx})
          for (bool oriented : {true, false}) {
            const std::size_t got = match(g, *f, oriented).size(), want = oracle_embedding_count(g, *f, oriented);
            if (got != want)
              t.fail("matcher " + std::to_string(got) + " vs oracle " + std::to_string(want) + " on " + to_hex(code));
            ++t.checked;
          }
      }
  return t;
}

Tally ranks(std::size_t samples, int max_dim, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const int rows = 1 + static_cast<int>(rng() % max_dim), cols = 1 + static_cast<int>(rng() % max_dim);
    SparseMatrix m;
    m.ncols = cols;
    // low-rank products and sparse rows with occasional large entries
    const int inner = 1 + static_cast<int>(rng() % std::min(rows, cols));
    std::vector<std::vector<long>> left(rows, std::vector<long>(inner)), right(inner, std::vector<long>(cols));
    for (auto& r : left)
      for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
    for (auto& r : right)
      for (auto& x : r) x = rng() % 3 ? 0 : static_cast<long>(rng() % 2001) - 1000;
    for (int i = 0; i < rows; ++i) {
      SparseRow row;
      for (int j = 0; j < cols; ++j) {
        long x = 0;
        for (int k = 0; k < inner; ++k) x += left[i][k] * right[k][j];
        if (s % 5 == 0 && rng() % 11 == 0) x += static_cast<long>(rng() % (1L << 40));
        if (x) row.push_back({j, x});
      }
      m.add_row(std::move(row));
    }
    const std::size_t want = oracle_rank(m);
    const std::size_t got = rank(m), dense = dense_rational_rank(m);
    if (got != want || dense != want)
      t.fail(std::to_string(rows) + "x" + std::to_string(cols) + ": rank " + std::to_string(got) + ", dense " +
             std::to_string(dense) + ", oracle " + std::to_string(want));
    ++t.checked;
  }
  return t;
}

}  // namespace vgtest
