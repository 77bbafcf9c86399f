#include "quotient.hpp"

#include <numeric>

#include "canon.hpp"

namespace vg {

RelationMatrix::RelationMatrix(std::vector<std::string> basis) : basis_(std::move(basis)) {
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], static_cast<int>(i));
  m_.ncols = static_cast<int>(basis_.size());
}

int RelationMatrix::column(const std::string& code) const {
  auto it = index_.find(code);
  return it == index_.end() ? -1 : it->second;
}

SparseRow integer_row(const LinearCombination& v, const std::unordered_map<std::string, int>& index) {
  mpz_class den = 1;
  for (const auto& [code, c] : v.terms()) den = lcm(den, c.get_den());
  std::vector<std::pair<int, mpz_class>> big;
  for (const auto& [code, c] : v.terms()) {
    auto it = index.find(code);
    if (it == index.end()) throw StructureError("relation term outside the diagram basis");
    big.emplace_back(it->second, mpz_class(c * den));
  }
  std::sort(big.begin(), big.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  mpz_class g = 0;
  for (const auto& [c, x] : big) g = gcd(g, x);
  SparseRow row;
  if (big.empty()) return row;
  if (big.front().second < 0) g = -g;
  for (auto& [c, x] : big) {
    mpz_class y = x / g;
    if (!y.fits_slong_p()) throw RankError("relation coefficient does not fit in 64 bits");
    row.emplace_back(c, y.get_si());
  }
  return row;
}

void RelationMatrix::add(const LinearCombination& v) {
  SparseRow row = integer_row(v, index_);
  if (row.empty()) return;
  std::size_t h = row.size();
  for (auto [c, x] : row) h = h * 1000003u ^ (static_cast<std::size_t>(c) * 31u + static_cast<std::size_t>(x));
  auto [lo, hi] = seen_.equal_range(h);
  for (auto it = lo; it != hi; ++it)
    if (m_.rows[it->second] == row) return;
  seen_.emplace(h, m_.rows.size());
  m_.rows.push_back(std::move(row));
}

RelationMatrix relation_matrix(DiagramEnumerator& en, int m, int u, const std::vector<const RelationSchema*>& schemas,
                               const RelationOptions& opt) {
  RelationMatrix rm(en.diagrams(m, u));
  if (m < 1 || 2 * m - u < 0) return rm;
  std::vector<LinearCombination> buf;
  for (const auto& code : en.graphs(2 * m - u, u)) {
    const Graph g = decode(code);
    buf.clear();
    for (const auto* s : schemas) host_relations(g, *s, buf);
    for (const auto& v : buf) rm.add(v);
    if (rm.size() > opt.capacity)
      throw CapacityError("relation generation at degree (" + std::to_string(m) + "," + std::to_string(u) +
                          ") exceeds " + std::to_string(opt.capacity) + " vectors");
  }
  return rm;
}

QuotientResult quotient_dim(DiagramEnumerator& en, int m, int u, const std::vector<const RelationSchema*>& schemas,
                            const RankOptions& ropt, const RelationOptions& opt) {
  auto rm = relation_matrix(en, m, u, schemas, opt);
  QuotientResult r;
  r.diagrams = rm.basis().size();
  r.relations = rm.size();
  r.rank = rank(rm.matrix(), ropt);
  r.dim = r.diagrams - r.rank;
  return r;
}

}  // namespace vg
