#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vg {

using SparseRow = std::vector<std::pair<int, std::int64_t>>;  // (column, value), sorted, no zeros

// Rows over a fixed indexed column basis. Rational rows are stored scaled to
// integers, which leaves every rank unchanged.
struct SparseMatrix {
  int ncols = 0;
  std::vector<SparseRow> rows;

  void add_row(SparseRow r);  // sorts, merges duplicates, drops zeros
  std::size_t nnz() const;
  // Debug dump, one `row col num/den` triplet per line.
  std::string triplets() const;
};

struct RankOptions {
  int primes = 2;             // independent primes that must agree
  int spot_check_rows = 24;   // rows in the exact rational cross-check
  std::uint64_t seed = 0x5eed;
};

class RankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Echelon data with respect to a column ordering. Columns are grouped into
// ordered blocks; pivots[b] counts pivots whose leading column lies in block
// b. With leading-column pivoting, the rows led in blocks >= b span the
// intersection of the row space with the span of those blocks.
struct BlockEchelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Rank modulo a single prime; `block` maps each column to its block index
// (empty: one block).
BlockEchelon echelon_mod_p(const SparseMatrix& m, std::uint32_t p, const std::vector<int>& block = {});

// Exact rank over Q: agreement of several word-size primes plus a dense
// rational elimination on a random row subset. Retries with fresh primes on
// disagreement and throws RankError if instability persists.
BlockEchelon exact_echelon(const SparseMatrix& m, const std::vector<int>& block = {}, const RankOptions& opt = {});
std::size_t rank(const SparseMatrix& m, const RankOptions& opt = {});

// Dense exact rational rank; used as the independent check.
std::size_t dense_rational_rank(const SparseMatrix& m);

const std::vector<std::uint32_t>& word_primes();

}  // namespace vg
