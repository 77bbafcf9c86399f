#include "linalg.hpp"

#include <algorithm>
#include <gmpxx.h>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace vg {

void SparseMatrix::add_row(SparseRow r) {
  std::sort(r.begin(), r.end());
  SparseRow out;
  for (auto [c, v] : r) {
    if (!out.empty() && out.back().first == c) out.back().second += v;
    else out.emplace_back(c, v);
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  rows.push_back(std::move(out));
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.size();
  return n;
}

std::string SparseMatrix::triplets() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (auto [c, v] : rows[i]) os << i << " " << c << " " << v << "/1\n";
  return os.str();
}

const std::vector<std::uint32_t>& word_primes() {
  static const std::vector<std::uint32_t> primes = {2147483647u, 2147483629u, 2147483587u, 2147483579u,
                                                    2147483563u, 2147483549u, 2147483543u, 2147483497u,
                                                    2147483489u, 2147483477u, 2147483423u, 2147483399u};
  return primes;
}

namespace {

using ModRow = std::vector<std::pair<int, std::uint32_t>>;

std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t powmod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t invmod(std::uint32_t a, std::uint32_t p) { return powmod(a, p - 2, p); }

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

// r <- r - f * piv, both sorted by position.
void axpy(ModRow& r, std::uint32_t f, const ModRow& piv, std::uint32_t p, ModRow& scratch) {
  scratch.clear();
  scratch.reserve(r.size() + piv.size());
  std::size_t i = 0, j = 0;
  const std::uint32_t neg = p - f;
  while (i < r.size() || j < piv.size()) {
    if (j == piv.size() || (i < r.size() && r[i].first < piv[j].first)) {
      scratch.push_back(r[i++]);
    } else if (i == r.size() || piv[j].first < r[i].first) {
      scratch.emplace_back(piv[j].first, mulmod(neg, piv[j].second, p));
      ++j;
    } else {
      std::uint32_t v = (r[i].second + mulmod(neg, piv[j].second, p)) % p;
      if (v) scratch.emplace_back(r[i].first, v);
      ++i;
      ++j;
    }
  }
  r.swap(scratch);
}

}  // namespace

BlockEchelon echelon_mod_p(const SparseMatrix& m, std::uint32_t p, const std::vector<int>& block) {
  const int nc = m.ncols;
  int nblocks = 1;
  if (!block.empty()) {
    if (static_cast<int>(block.size()) != nc) throw RankError("block map size does not match column count");
    nblocks = *std::max_element(block.begin(), block.end()) + 1;
    if (nc == 0) nblocks = 0;
  }
  // Column positions: by block, then by occurrence count (sparse columns lead).
  std::vector<int> count(nc, 0);
  for (const auto& r : m.rows)
    for (auto [c, v] : r) {
      if (c < 0 || c >= nc) throw RankError("column index out of range");
      ++count[c];
    }
  std::vector<int> order(nc);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int ba = block.empty() ? 0 : block[a], bb = block.empty() ? 0 : block[b];
    if (ba != bb) return ba < bb;
    if (count[a] != count[b]) return count[a] < count[b];
    return a < b;
  });
  std::vector<int> pos(nc), block_at(nc);
  for (int i = 0; i < nc; ++i) {
    pos[order[i]] = i;
    block_at[i] = block.empty() ? 0 : block[order[i]];
  }

  std::vector<ModRow> work;
  work.reserve(m.rows.size());
  for (const auto& r : m.rows) {
    ModRow mr;
    for (auto [c, v] : r) {
      auto x = reduce(v, p);
      if (x) mr.emplace_back(pos[c], x);
    }
    if (mr.empty()) continue;
    std::sort(mr.begin(), mr.end());
    work.push_back(std::move(mr));
  }
  std::vector<std::size_t> idx(work.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return work[a].size() < work[b].size(); });

  std::vector<int> pivot_of(nc, -1);
  std::vector<ModRow> pivots;
  BlockEchelon out;
  out.pivots.assign(std::max(nblocks, 1), 0);
  if (nblocks == 0) out.pivots.clear();
  ModRow scratch;
  for (std::size_t k : idx) {
    ModRow r = std::move(work[k]);
    while (!r.empty()) {
      const int lead = r.front().first;
      const int pr = pivot_of[lead];
      if (pr < 0) {
        const std::uint32_t inv = invmod(r.front().second, p);
        for (auto& e : r) e.second = mulmod(e.second, inv, p);
        pivot_of[lead] = static_cast<int>(pivots.size());
        pivots.push_back(std::move(r));
        ++out.rank;
        ++out.pivots[block_at[lead]];
        break;
      }
      axpy(r, r.front().second, pivots[pr], p, scratch);
    }
  }
  return out;
}

std::size_t dense_rational_rank(const SparseMatrix& m) {
  std::set<int> cols;
  for (const auto& r : m.rows)
    for (auto [c, v] : r) cols.insert(c);
  std::map<int, int> ci;
  for (int c : cols) ci.emplace(c, static_cast<int>(ci.size()));
  const std::size_t nc = cols.size();
  std::vector<std::vector<mpq_class>> a;
  for (const auto& r : m.rows) {
    std::vector<mpq_class> row(nc);
    for (auto [c, v] : r) row[ci[c]] += mpq_class(static_cast<long>(v));
    a.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nc && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[rank][c];
      for (std::size_t j = c; j < nc; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

BlockEchelon exact_echelon(const SparseMatrix& m, const std::vector<int>& block, const RankOptions& opt) {
  const auto& primes = word_primes();
  std::mt19937_64 rng(opt.seed);
  std::vector<std::uint32_t> pool(primes.begin(), primes.end());
  std::shuffle(pool.begin(), pool.end(), rng);
  const int need = std::max(opt.primes, 2);
  std::size_t next = 0;
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (next + need > pool.size()) break;
    std::vector<BlockEchelon> results;
    for (int i = 0; i < need; ++i) results.push_back(echelon_mod_p(m, pool[next++], block));
    bool agree = true;
    for (const auto& r : results)
      agree = agree && r.rank == results[0].rank && r.pivots == results[0].pivots;
    if (!agree) continue;
    // Spot check: rank of a random row subset over Q against the same subset mod p.
    if (opt.spot_check_rows > 0 && !m.rows.empty()) {
      SparseMatrix sub;
      sub.ncols = m.ncols;
      std::vector<std::size_t> pick(m.rows.size());
      std::iota(pick.begin(), pick.end(), 0);
      std::shuffle(pick.begin(), pick.end(), rng);
      pick.resize(std::min<std::size_t>(pick.size(), opt.spot_check_rows));
      for (auto i : pick) sub.rows.push_back(m.rows[i]);
      if (dense_rational_rank(sub) != echelon_mod_p(sub, pool[0], {}).rank) continue;
    }
    return results[0];
  }
  throw RankError("modular ranks did not stabilise across fresh primes");
}

std::size_t rank(const SparseMatrix& m, const RankOptions& opt) { return exact_echelon(m, {}, opt).rank; }

}  // namespace vg
