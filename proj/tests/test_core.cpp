#include <doctest.h>

#include <algorithm>
#include <random>

#include "canon.hpp"
#include "checks.hpp"
#include "enumerate.hpp"
#include "graph.hpp"
#include "helpers.hpp"

using namespace vg;

TEST_CASE("text format round trip") {
  const Graph t = testgraphs::theta();
  const Graph back = parse_graph(to_text(t));
  CHECK(canonicalize(back) == canonicalize(t));
  CHECK(back.num_vertices() == 2);
  CHECK(back.num_edges() == 3);
}

TEST_CASE("parse errors carry a line number") {
  CHECK_THROWS_AS(parse_graph("diagram\ndarts 4\ninvolution 0 1, 2 3\nvertices 0 2, 1 3\nend\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("diagram\ndarts 6\ninvolution 0 1, 2 3, 4 5\nvertices 0 2 4, 1 3 5\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("darts 6\n"), ParseError);
  try {
    parse_graph("diagram\ndarts 6\nbogus 1\nend\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("canonical form is invariant under relabeling") {
  DiagramEnumerator en;
  std::mt19937_64 rng(7);
  for (auto [m, u] : std::vector<std::pair<int, int>>{{3, 0}, {4, 2}, {4, 4}, {5, 2}})
    for (const auto& code : en.diagrams(m, u)) {
      const Graph g = decode(code);
      CHECK(canonicalize(g) == SignedCanonical{code, 1});
      std::vector<int> order(g.num_vertices());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      CHECK(canonicalize(relabel(g, order)) == SignedCanonical{code, 1});
    }
}

TEST_CASE("reversing one vertex flips the sign") {
  const Graph t = testgraphs::theta();
  const auto a = canonicalize(t);
  const auto b = canonicalize(testgraphs::reverse_vertex(t, 0));
  CHECK(a.code == b.code);
  CHECK(a.sign == -b.sign);
  CHECK(a.sign != 0);
}

TEST_CASE("strut has a nonzero canonical form") {
  GraphBuilder b;
  const int x = b.add_vertex(VertexKind::Univalent), y = b.add_vertex(VertexKind::Univalent);
  b.add_edge(x, y);
  const Graph s = std::move(b).build();
  CHECK_FALSE(canonicalize(s).zero());
}

TEST_CASE("a loop at a trivalent vertex gives sign zero") {
  GraphBuilder b;
  const int v = b.add_vertex(VertexKind::Normal), l = b.add_vertex(VertexKind::Univalent);
  b.add_edge(v, v);
  b.add_edge(v, l);
  CHECK(canonicalize(std::move(b).build()).zero());
}

TEST_CASE("decode inverts the canonical code") {
  DiagramEnumerator en;
  for (const auto& code : en.graphs(6, 2)) CHECK(canonicalize(decode(code)).code == code);
}

TEST_CASE("enumeration counts match the brute-force oracle for m <= 3") {
  DiagramEnumerator en;
  const auto t = vgtest::enumeration(en, 3);
  INFO(t.first);
  CHECK(t.ok(1));
}

TEST_CASE("small enumeration examples") {
  DiagramEnumerator en;
  const auto m1 = en.diagrams(1, 0);
  REQUIRE(m1.size() == 1);
  CHECK(m1[0] == canonicalize(testgraphs::theta()).code);
  CHECK(en.diagrams(1, 2).size() == 1);
  CHECK(en.diagrams(2, 4).empty());
}

TEST_CASE("enumeration honors its capacity") {
  DiagramEnumerator en(10);
  CHECK_THROWS_AS(en.graphs(8, 2), CapacityError);
}
