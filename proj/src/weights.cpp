#include "weights.hpp"

#include <algorithm>
#include <numeric>

#include "canon.hpp"

namespace vg {

NPolynomial NPolynomial::monomial(const mpq_class& c, int power) {
  std::vector<mpq_class> v(power + 1, 0);
  v[power] = c;
  return NPolynomial(std::move(v));
}

void NPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class NPolynomial::operator()(const mpq_class& n) const {
  mpq_class r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * n + c_[i];
  return r;
}

NPolynomial& NPolynomial::operator+=(const NPolynomial& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

NPolynomial operator*(const mpq_class& s, NPolynomial p) {
  for (auto& c : p.c_) c *= s;
  p.trim();
  return p;
}

std::string NPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    mpq_class a = abs(c_[i]);
    if (out.empty()) out += c_[i] < 0 ? "-" : "";
    else out += c_[i] < 0 ? " - " : " + ";
    const bool unit = a == 1 && i > 0;
    if (!unit) out += a.get_str();
    if (i > 0) out += std::string(unit ? "" : "*") + "N" + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

ClosedStructure glue_legs_to_circle(const Graph& g, const std::vector<int>& order) {
  std::vector<int> legs;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.kind(v) == VertexKind::Univalent) legs.push_back(v);
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != legs) throw PreconditionError("the circle order must list every leg once");
  if (!g.is_diagram()) throw PreconditionError("weights are defined on diagrams");
  return {g, order};
}

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

// Boundary strands: every dart d has a left node 2d and a right node 2d+1;
// circle leg k has nodes base+2k (incoming) and base+2k+1 (outgoing). Every
// node meets two joins, so the strands are closed loops.
NPolynomial state_sum(const ClosedStructure& c, bool so) {
  const Graph& g = c.graph;
  const int nd = g.num_darts();
  const int base = 2 * nd;
  const int u = static_cast<int>(c.circle.size());
  const int nodes = base + 2 * u;
  if (u != g.legs()) throw PreconditionError("legs must be glued to the circle first");
  std::vector<std::pair<int, int>> fixed;
  for (int k = 0; k < u; ++k) {
    const int d = g.darts(c.circle[k])[0];
    fixed.push_back({base + 2 * k, 2 * d + 1});
    fixed.push_back({2 * d, base + 2 * k + 1});
    fixed.push_back({base + 2 * k + 1, base + 2 * ((k + 1) % u)});
  }
  std::vector<int> tri;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.kind(v) == VertexKind::Normal) tri.push_back(v);
  const int nv = static_cast<int>(tri.size());
  // For so, reversing a vertex while twisting its three edges leaves every
  // strand and the sign unchanged, so the vertices stay in their given order.
  const int vbits = so ? 0 : nv;
  const int ne = so ? g.num_edges() : 0;
  const int bits = vbits + ne;
  if (bits > 30) throw CapacityError("state sum over more than 2^30 states");
  std::vector<long long> count(nodes + 1, 0);
  for (long long s = 0; s < (1LL << bits); ++s) {
    UnionFind uf(nodes);
    int comps = nodes;
    for (auto [a, b] : fixed) comps -= uf.join(a, b);
    int sign = 1;
    for (int i = 0; i < nv; ++i) {
      auto dv = g.darts(tri[i]);
      int o[3] = {dv[0], dv[1], dv[2]};
      if (i < vbits && (s >> i & 1)) {
        std::swap(o[1], o[2]);
        sign = -sign;
      }
      for (int j = 0; j < 3; ++j) comps -= uf.join(2 * o[j], 2 * o[(j + 1) % 3] + 1);
    }
    for (int e = 0; e < g.num_edges(); ++e) {
      const bool twisted = so && (s >> (vbits + e) & 1);
      if (twisted) {
        sign = -sign;
        comps -= uf.join(4 * e, 4 * e + 2);
        comps -= uf.join(4 * e + 1, 4 * e + 3);
      } else {
        comps -= uf.join(4 * e, 4 * e + 3);
        comps -= uf.join(4 * e + 1, 4 * e + 2);
      }
    }
    count[comps] += sign;
  }
  std::vector<mpq_class> coef(nodes + 1, 0);
  for (int i = 0; i <= nodes; ++i) coef[i] = static_cast<long>(count[i]);
  NPolynomial p(std::move(coef));
  if (so) {
    mpq_class scale(1);
    for (int e = nv; e < g.num_edges(); ++e) scale /= 2;
    p = scale * p;
  }
  return p;
}

}  // namespace

NPolynomial gl_weight(const ClosedStructure& c) { return state_sum(c, false); }
NPolynomial so_weight(const ClosedStructure& c) { return state_sum(c, true); }

std::string to_string(Algebra a) { return a == Algebra::GL ? "gl" : "so"; }

NPolynomial symmetric_weight(const Graph& g, Algebra a) {
  std::vector<int> legs;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.kind(v) == VertexKind::Univalent) legs.push_back(v);
  NPolynomial total;
  if (legs.empty()) {
    const auto c = glue_legs_to_circle(g, {});
    return a == Algebra::GL ? gl_weight(c) : so_weight(c);
  }
  // rotations of the circle give the same closure: fix the first leg
  std::vector<int> rest(legs.begin() + 1, legs.end());
  do {
    std::vector<int> order{legs[0]};
    order.insert(order.end(), rest.begin(), rest.end());
    const auto c = glue_legs_to_circle(g, order);
    total += a == Algebra::GL ? gl_weight(c) : so_weight(c);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return mpq_class(static_cast<long>(legs.size())) * total;
}

NPolynomial symmetric_weight(const LinearCombination& v, Algebra a) {
  NPolynomial total;
  for (const auto& [code, c] : v.terms()) total += c * symmetric_weight(decode(code), a);
  return total;
}

std::string Certificate::to_text() const {
  std::string out = "code " + to_hex(code) + "\nclosure all-orders\nalgebra " + to_string(algebra) + "\ncoefficients";
  for (const auto& c : value.coefficients()) out += " " + c.get_str();
  return out + "\n";
}

std::optional<Certificate> certify_nonzero(const Graph& g) {
  const auto canon = canonicalize(g);
  if (canon.zero()) return std::nullopt;
  for (Algebra a : {Algebra::GL, Algebra::SO}) {
    auto w = symmetric_weight(g, a);
    if (!w.zero()) return Certificate{canon.code, a, std::move(w)};
  }
  return std::nullopt;
}

}  // namespace vg
