#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "enumerate.hpp"
#include "lincomb.hpp"
#include "linalg.hpp"
#include "relation.hpp"

namespace vg {

// Integer rows over a fixed basis of canonical codes, deduplicated up to
// scalar multiples.
class RelationMatrix {
 public:
  explicit RelationMatrix(std::vector<std::string> basis);

  const std::vector<std::string>& basis() const { return basis_; }
  int column(const std::string& code) const;  // -1 when absent
  // Adds a relation; codes outside the basis are an error.
  void add(const LinearCombination& v);
  const SparseMatrix& matrix() const { return m_; }
  std::size_t size() const { return m_.rows.size(); }

 private:
  std::vector<std::string> basis_;
  std::unordered_map<std::string, int> index_;
  SparseMatrix m_;
  std::vector<std::size_t> hashes_;
  std::unordered_multimap<std::size_t, std::size_t> seen_;
};

SparseRow integer_row(const LinearCombination& v, const std::unordered_map<std::string, int>& index);

struct QuotientResult {
  std::size_t diagrams = 0;
  std::size_t relations = 0;
  std::size_t rank = 0;
  std::size_t dim = 0;
};

// Relation matrix of degree-(m,u) diagrams under the given schemas.
RelationMatrix relation_matrix(DiagramEnumerator& en, int m, int u, const std::vector<const RelationSchema*>& schemas,
                               const RelationOptions& opt = {});

// #diagrams - rank(relations). {IHX} gives BB(m,u), {IHX, x} gives B(m,u).
QuotientResult quotient_dim(DiagramEnumerator& en, int m, int u, const std::vector<const RelationSchema*>& schemas,
                            const RankOptions& ropt = {}, const RelationOptions& opt = {});

}  // namespace vg
