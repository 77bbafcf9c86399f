#pragma once

#include <gmpxx.h>

#include <algorithm>

#include <string>
#include <utility>
#include <vector>

namespace vg {

// Finite formal sum of canonical codes with rational coefficients.
class LinearCombination {
 public:
  using Term = std::pair<std::string, mpq_class>;

  void add(const std::string& code, const mpq_class& c) {
    if (c != 0) terms_.emplace_back(code, c);
    normal_ = false;
  }
  void add(const LinearCombination& other, const mpq_class& scale = 1) {
    for (const auto& [code, c] : other.terms()) add(code, c * scale);
  }

  // Sorted by code, merged, zeros dropped.
  const std::vector<Term>& terms() const {
    normalize();
    return terms_;
  }
  bool empty() const { return terms().empty(); }
  std::size_t size() const { return terms().size(); }

  // Scaled so that the first coefficient is 1; the representative of the
  // line spanned by this vector.
  LinearCombination monic() const {
    LinearCombination out = *this;
    out.normalize();
    if (!out.terms_.empty()) {
      mpq_class lead = out.terms_.front().second;
      for (auto& t : out.terms_) t.second /= lead;
    }
    return out;
  }

  friend bool operator==(const LinearCombination& a, const LinearCombination& b) { return a.terms() == b.terms(); }
  friend bool operator<(const LinearCombination& a, const LinearCombination& b) { return a.terms() < b.terms(); }

 private:
  void normalize() const {
    if (normal_) return;
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) out.back().second += t.second;
      else out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.second == 0; });
    terms_ = std::move(out);
    normal_ = true;
  }

  mutable std::vector<Term> terms_;
  mutable bool normal_ = true;
};

}  // namespace vg
