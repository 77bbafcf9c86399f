#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "lincomb.hpp"

namespace vg {

// Polynomial in N with rational coefficients; coefficient i belongs to N^i.
class NPolynomial {
 public:
  NPolynomial() = default;
  explicit NPolynomial(std::vector<mpq_class> c) : c_(std::move(c)) { trim(); }
  static NPolynomial monomial(const mpq_class& c, int power);

  const std::vector<mpq_class>& coefficients() const { return c_; }
  bool zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  mpq_class operator()(const mpq_class& n) const;

  NPolynomial& operator+=(const NPolynomial& o);
  friend NPolynomial operator+(NPolynomial a, const NPolynomial& b) { return a += b; }
  friend NPolynomial operator*(const mpq_class& s, NPolynomial p);
  friend bool operator==(const NPolynomial& a, const NPolynomial& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> c_;
};

// A diagram whose legs sit on an oriented circle in the given order (legs
// listed as univalent vertex ids). Closed diagrams have an empty order.
struct ClosedStructure {
  Graph graph;
  std::vector<int> circle;
};

ClosedStructure glue_legs_to_circle(const Graph& g, const std::vector<int>& order);

// State sums over the two cyclic resolutions of every trivalent vertex; so
// additionally sums over untwisted and twisted edges with weights 1/2, -1/2.
NPolynomial gl_weight(const ClosedStructure& c);
NPolynomial so_weight(const ClosedStructure& c);

enum class Algebra { GL, SO };
std::string to_string(Algebra a);

// Weight of a diagram with legs: sum over all orders of the legs on the
// circle. This is well defined on classes, since legs are unlabeled.
NPolynomial symmetric_weight(const Graph& g, Algebra a);
// Linear extension to combinations of canonical codes.
NPolynomial symmetric_weight(const LinearCombination& v, Algebra a);

struct Certificate {
  std::string code;  // canonical code (hex in text form)
  Algebra algebra = Algebra::GL;
  NPolynomial value;
  std::string to_text() const;
};

// A nonzero symmetric gl or so weight proves that the diagram is nonzero in
// BB(m,u). Nothing is returned when both vanish.
std::optional<Certificate> certify_nonzero(const Graph& g);

}  // namespace vg
