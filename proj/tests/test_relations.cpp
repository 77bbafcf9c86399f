#include <doctest.h>

#include <set>
#include <sstream>

#include "canon.hpp"
#include "checks.hpp"
#include "helpers.hpp"
#include "quotient.hpp"
#include "relation.hpp"

using namespace vg;

namespace {

const vgtest::Corpus& corpus() {
  static const vgtest::Corpus c(VGRAPH_TEST_DATA);
  return c;
}

// The s-type relation on a fixed n-ladder, drawn vertex by vertex with the
// slot orders of the ladder macro.
std::string drawn_ladder_schema(int n) {
  std::ostringstream s;
  s << "schema drawn\nprovenance test\nends 4\n";
  for (int sign : {1, -1}) {
    s << "term " << sign << "\n";
    for (int i = 1; i <= n; ++i) s << "  vertex a" << i << " n\n  vertex b" << i << " n\n";
    for (int i = 1; i <= n; ++i) s << "  edge a" << i << " b" << i << "\n";
    for (int i = 1; i < n; ++i) s << "  edge a" << i << " a" << i + 1 << "\n  edge b" << i << " b" << i + 1 << "\n";
    s << "  end 1 a1\n  end 2 b1\n";
    s << "  end " << (sign > 0 ? 3 : 4) << " a" << n << "\n  end " << (sign > 0 ? 4 : 3) << " b" << n << "\n";
    for (int i = 1; i <= n; ++i) {
      const std::string up_a = i < n ? "a" + std::to_string(i + 1) : std::string("@") + (sign > 0 ? "3" : "4");
      const std::string down_a = i > 1 ? "a" + std::to_string(i - 1) : "@1";
      const std::string up_b = i < n ? "b" + std::to_string(i + 1) : std::string("@") + (sign > 0 ? "4" : "3");
      const std::string down_b = i > 1 ? "b" + std::to_string(i - 1) : "@2";
      s << "  rotation a" << i << " " << up_a << " " << down_a << " b" << i << "\n";
      s << "  rotation b" << i << " " << up_b << " a" << i << " " << down_b << "\n";
    }
  }
  return s.str();
}

std::string macro_ladder_schema(int n) {
  std::ostringstream s;
  s << "schema macro\nprovenance test\nends 4\n";
  s << "term 1\n  ladder L " << n << "\n  end 1 L.1\n  end 2 L.2\n  end 3 L.3\n  end 4 L.4\n";
  s << "term -1\n  ladder L " << n << "\n  end 1 L.1\n  end 2 L.2\n  end 4 L.3\n  end 3 L.4\n";
  return s.str();
}

}  // namespace

TEST_CASE("vertex fragment in theta") {
  const Graph t = testgraphs::theta();
  const Fragment f = vgtest::vertex_fragment();
  CHECK(match(t, f, true).size() == 6);
  CHECK(match(t, f, false).size() == 12);
  CHECK(vgtest::oracle_embedding_count(t, f, true) == 6);
}

TEST_CASE("IHX pattern in theta") {
  const Graph t = testgraphs::theta();
  const Fragment f = corpus().ihx->instantiate().front().fragment;
  const auto got = match(t, f, true).size();
  CHECK(got == vgtest::oracle_embedding_count(t, f, true));
  CHECK(got > 0);
}

TEST_CASE("a square pattern does not match a square-free diagram") {
  const auto s = parse_schemas(macro_ladder_schema(2));
  CHECK(match(testgraphs::theta(), s[0].instantiate().front().fragment, false).empty());
  CHECK(match(testgraphs::leg_ladder(3), s[0].instantiate().front().fragment, false).size() > 0);
}

TEST_CASE("matcher counts equal the brute-force oracle for m <= 4") {
  DiagramEnumerator en;
  const auto t = vgtest::embeddings(en, corpus(), 4);
  INFO(t.first);
  CHECK(t.ok(100));
}

TEST_CASE("shipped corpus") {
  std::set<std::string> names;
  for (const auto& s : corpus().schemas) {
    names.insert(s.name);
    CHECK_FALSE(s.provenance.empty());
  }
  CHECK(names == std::set<std::string>{"IHX", "x", "t", "s", "LS", "LIHX", "LI", "LL", "tunnel_square", "tunnel_ladder"});
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(parse_schemas("schema a\nends 3\nterm 1\n  vertex v n\n  end 1 v\n  end 2 v\n  end 3 v\n"
                                "term 1\n  vertex v n\n  end 1 v\n  end 2 v\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_schemas("schema a\nends 2\nterm 1\n  ladder L n\n  end 1 L.1\n"), ParseError);
  CHECK_THROWS_AS(parse_schemas("schema a\nends 3\nterm x\n"), ParseError);
}

TEST_CASE("ladder families instantiate homogeneously") {
  const RelationSchema* ls = find_schema(corpus().schemas, "LS");
  REQUIRE(ls);
  CHECK(ls->parametric());
  for (int n : {2, 4}) {
    const auto terms = ls->instantiate(n);
    REQUIRE(terms.size() == 2);
    for (const auto& t : terms) CHECK(t.fragment.num_vertices() == 2 * n);
  }
  const auto values = ls->parameter_values(12);
  CHECK(values == std::vector<int>{2, 4, 6});
}

TEST_CASE("ladder macro and explicit drawing give the same relations") {
  DiagramEnumerator en;
  for (int n : {2, 3, 4}) {
    const auto drawn = parse_schemas(drawn_ladder_schema(n));
    const auto macro = parse_schemas(macro_ladder_schema(n));
    std::size_t total = 0;
    for (auto [m, u] : std::vector<std::pair<int, int>>{{4, 4}, {5, 4}, {6, 4}, {5, 2}, {6, 2}}) {
      const auto a = relation_vectors(en, m, u, {&drawn[0]});
      const auto b = relation_vectors(en, m, u, {&macro[0]});
      CHECK(a == b);
      total += a.size();
    }
    CHECK(total > 0);
  }
}

TEST_CASE("IHX quotient dimensions") {
  DiagramEnumerator en;
  CHECK(quotient_dim(en, 2, 2, corpus().bb()).dim == 1);
  const auto q3 = quotient_dim(en, 3, 2, corpus().bb());
  CHECK(q3.rank == q3.diagrams - 1);
  const auto none = quotient_dim(en, 5, 2, {});
  CHECK(none.relations == 0);
  CHECK(none.dim == en.diagrams(5, 2).size());
  CHECK(quotient_dim(en, 3, 4, corpus().bb()).dim == 0);
}

TEST_CASE("relation vectors are monic, sorted and free of duplicates") {
  DiagramEnumerator en;
  const auto v = relation_vectors(en, 5, 2, corpus().b());
  REQUIRE_FALSE(v.empty());
  CHECK(std::is_sorted(v.begin(), v.end()));
  CHECK(std::adjacent_find(v.begin(), v.end()) == v.end());
  for (const auto& x : v) CHECK(x.terms().front().second == 1);
}

TEST_CASE("gl and so weights vanish on IHX vectors") {
  DiagramEnumerator en;
  const auto t = vgtest::ihx_weights_vanish(en, corpus(), 200, {2, 3});
  INFO(t.first);
  CHECK(t.ok(200));
}

TEST_CASE("the derived schemas are consequences of IHX and x") {
  DiagramEnumerator en;
  for (auto [m, u] : std::vector<std::pair<int, int>>{{6, 2}, {5, 4}, {6, 4}, {6, 6}}) {
    auto rm = relation_matrix(en, m, u, corpus().b());
    const auto base = rank(rm.matrix());
    for (const auto& s : corpus().schemas) {
      if (&s == corpus().ihx || &s == corpus().x) continue;
      RelationMatrix ext = rm;
      for (const auto& v : relation_vectors(en, m, u, {&s})) ext.add(v);
      INFO(s.name << " at (" << m << "," << u << ")");
      CHECK(rank(ext.matrix()) == base);
    }
  }
}

TEST_CASE("B is a quotient of BB in low degree") {
  DiagramEnumerator en;
  const auto b = quotient_dim(en, 4, 2, corpus().b());
  const auto bb = quotient_dim(en, 4, 2, corpus().bb());
  CHECK(b.dim <= bb.dim);
  CHECK(quotient_dim(en, 3, 2, corpus().b()).dim == 0);
  CHECK(quotient_dim(en, 2, 2, corpus().b()).dim == 1);
  CHECK(quotient_dim(en, 1, 0, corpus().b()).dim == 1);
}
