#include <doctest.h>

#include <cstring>
#include <string>

#include "vgraph/vgraph.h"

namespace {

struct Ctx {
  vg_context* ctx = nullptr;
  Ctx() { REQUIRE(vg_context_create(VGRAPH_TEST_DATA, &ctx) == VG_OK); }
  ~Ctx() { vg_context_destroy(ctx); }
};

const char* kTheta = "diagram\ndarts 6\ninvolution 0 1, 2 3, 4 5\nvertices 0 2 4, 1 3 5\nend\n";

}  // namespace

TEST_CASE("context and corpus") {
  Ctx c;
  CHECK(vg_schema_count(c.ctx) == 10);
  CHECK(std::string(vg_schema_name(c.ctx, 0)).size() > 0);
  CHECK(vg_schema_name(c.ctx, 99) == nullptr);
  Ctx d;
  CHECK(vg_context_digest(c.ctx) == vg_context_digest(d.ctx));
  vg_context* bad = nullptr;
  CHECK(vg_context_create("/nonexistent/dir", &bad) != VG_OK);
  CHECK(bad == nullptr);
  CHECK(std::strlen(vg_last_error()) > 0);
}

TEST_CASE("dimensions") {
  Ctx c;
  vg_dim_result r{};
  REQUIRE(vg_dim(c.ctx, 5, 2, VG_SPACE_BB, &r) == VG_OK);
  CHECK(r.dim == 2);
  REQUIRE(vg_dim(c.ctx, 1, 0, VG_SPACE_B, &r) == VG_OK);
  CHECK(r.dim == 1);
  REQUIRE(vg_dim(c.ctx, 2, 4, VG_SPACE_BB, &r) == VG_OK);
  CHECK(r.dim == 0);
  CHECK(vg_dim(c.ctx, -1, 0, VG_SPACE_BB, &r) == VG_ERR_ARGUMENT);
  CHECK(vg_dim(nullptr, 1, 0, VG_SPACE_BB, &r) == VG_ERR_ARGUMENT);
}

TEST_CASE("capacity errors") {
  Ctx c;
  REQUIRE(vg_context_set_capacity(c.ctx, 5, 1000) == VG_OK);
  vg_dim_result r{};
  CHECK(vg_dim(c.ctx, 6, 2, VG_SPACE_BB, &r) == VG_ERR_CAPACITY);
  CHECK(std::string(vg_status_name(VG_ERR_CAPACITY)) == "capacity");
}

TEST_CASE("filtration rows") {
  Ctx c;
  vg_filtration_row* rows = nullptr;
  size_t n = 0;
  REQUIRE(vg_filtration(c.ctx, 6, 4, &rows, &n) == VG_OK);
  vg_delta* t = nullptr;
  size_t nt = 0;
  REQUIRE(vg_t_set(6, 4, &t, &nt) == VG_OK);
  CHECK(n == nt);
  int nonzero = 0;
  for (size_t i = 0; i < n; ++i) {
    if (rows[i].dim_g) ++nonzero;
    CHECK(rows[i].f == t[i].f);
  }
  CHECK(nonzero == 1);
  vg_free(rows);
  vg_free(t);
}

TEST_CASE("mu, tables and bounds") {
  Ctx c;
  vg_mu_result r{};
  REQUIRE(vg_mu(c.ctx, 4, 4, 0, 1, &r) == VG_OK);
  CHECK(r.value == 1);
  vg_mu_table* t = nullptr;
  REQUIRE(vg_mu_table_create(&t) == VG_OK);
  vg_bound_term* terms = nullptr;
  size_t n = 0;
  REQUIRE(vg_bound_terms(6, 2, &terms, &n) == VG_OK);
  for (size_t i = 0; i < n; ++i) {
    vg_mu_result m{};
    REQUIRE(vg_mu(c.ctx, terms[i].m, terms[i].u, terms[i].o, terms[i].e, &m) == VG_OK);
    REQUIRE(vg_mu_table_set(t, terms[i].m, terms[i].u, terms[i].o, terms[i].e, (int64_t)m.value, VG_MU_COMPUTED) ==
            VG_OK);
  }
  vg_free(terms);
  int64_t bound = 0;
  REQUIRE(vg_bb_bound(6, 2, t, &bound) == VG_OK);
  CHECK(bound == 2);
  char* rows = nullptr;
  REQUIRE(vg_mu_table_rows(t, &rows) == VG_OK);
  vg_mu_table* u = nullptr;
  REQUIRE(vg_mu_table_create(&u) == VG_OK);
  REQUIRE(vg_mu_table_load(u, rows) == VG_OK);
  int64_t again = 0;
  REQUIRE(vg_bb_bound(6, 2, u, &again) == VG_OK);
  CHECK(again == bound);
  CHECK(vg_mu_table_load(u, "not,a,row\n") == VG_ERR_PARSE);
  vg_free(rows);
  vg_sandwich_summary s{};
  vg_sandwich_row* srows = nullptr;
  size_t ns = 0;
  REQUIRE(vg_sandwich(6, 2, 3, t, &s, &srows, &ns) == VG_OK);
  CHECK(s.feasible == 0);
  vg_free(srows);
  vg_mu_table_destroy(t);
  vg_mu_table_destroy(u);
  int64_t cf = 0;
  REQUIRE(vg_closed_form_bb(12, 2, &cf) == VG_OK);
  CHECK(cf == 9);
  CHECK(vg_sqnum(6) == 3);
}

TEST_CASE("diagrams and certificates") {
  vg_diagram* d = nullptr;
  REQUIRE(vg_diagram_parse(kTheta, &d) == VG_OK);
  int m = 0, u = 0;
  REQUIRE(vg_diagram_degree(d, &m, &u) == VG_OK);
  CHECK(m == 1);
  CHECK(u == 0);
  char* hex = nullptr;
  int sign = 0;
  REQUIRE(vg_diagram_code(d, &hex, &sign) == VG_OK);
  CHECK(sign != 0);
  vg_diagram* e = nullptr;
  REQUIRE(vg_diagram_from_code(hex, &e) == VG_OK);
  char* text = nullptr;
  REQUIRE(vg_diagram_text(e, &text) == VG_OK);
  CHECK(std::string(text).rfind("diagram", 0) == 0);
  int found = 0;
  char* cert = nullptr;
  REQUIRE(vg_certify(d, &found, &cert) == VG_OK);
  CHECK(found == 1);
  CHECK(std::string(cert).find("algebra gl") != std::string::npos);
  char* w = nullptr;
  REQUIRE(vg_weight(d, VG_ALGEBRA_GL, &w) == VG_OK);
  CHECK(std::string(w) == "-2*N^3 + 2*N");
  vg_free(hex);
  vg_free(text);
  vg_free(cert);
  vg_free(w);
  vg_diagram_destroy(d);
  vg_diagram_destroy(e);
  CHECK(vg_diagram_parse("diagram\ndarts 3\nend\n", &d) == VG_ERR_PARSE);
  CHECK(vg_diagram_from_code("zz", &d) != VG_OK);
  vg_diagram** all = nullptr;
  size_t n = 0;
  const std::string two = std::string(kTheta) + kTheta;
  REQUIRE(vg_diagram_parse_all(two.c_str(), &all, &n) == VG_OK);
  CHECK(n == 2);
  for (size_t i = 0; i < n; ++i) vg_diagram_destroy(all[i]);
  vg_free(all);
}
