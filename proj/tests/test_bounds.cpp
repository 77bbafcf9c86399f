#include <doctest.h>

#include "bounds.hpp"
#include "checks.hpp"
#include "graph.hpp"

using namespace vg;

TEST_CASE("square numbers") {
  CHECK(sqnum(0) == 0);
  CHECK(lambda0_dim_bound(0) == 1);
  CHECK(lambda0_dim_bound(3) == 2);
  CHECK(lambda0_dim_bound(6) == 4);
  CHECK(sqnum(-3) == 0);
  const auto t = vgtest::sqnum_identity(100);
  INFO(t.first);
  CHECK(t.ok(101));
}

TEST_CASE("closed forms") {
  CHECK(closed_form_bb(5, 2) == 2);
  CHECK(closed_form_bb(12, 2) == 9);
  CHECK(closed_form_bb(6, 6) == 1);
  CHECK(closed_form_bb(7, 4) == 3);
  const std::vector<long> want{1, 1, 1, 2, 2, 3, 4};
  for (int m = 2; m <= 8; ++m) CHECK(closed_form_bb(m, 2) == want[m - 2]);
  for (int m = 1; m <= 12; ++m) CHECK(closed_form_bb(m, 0) == closed_form_bb(m + 1, 2));
}

TEST_CASE("bound from a single generator") {
  for (int m = 4; m <= 9; ++m) {
    MuTable t;
    for (const auto& [k, c] : bound_coefficients(m, 2)) t.set(k, 0);
    t.set({2, 2, 0, 0}, 3);
    CHECK(bb_bound(m, 2, t) == lambda0_dim_bound(m - 2) * 3);
  }
}

TEST_CASE("missing entries are named") {
  MuTable t;
  try {
    bb_bound(6, 2, t);
    FAIL("no error");
  } catch (const StructureError& e) {
    CHECK(std::string(e.what()).find("(") != std::string::npos);
  }
}

TEST_CASE("sandwich flags an infeasible table") {
  MuTable t;
  for (const auto& [k, c] : bound_coefficients(6, 2)) t.set(k, 0, MuSource::AssumedZero);
  const auto r = sandwich(6, 2, 2, t);
  CHECK_FALSE(r.feasible);
  CHECK(r.bound == 0);
  t.set({2, 2, 0, 0}, 1);
  const auto ok = sandwich(6, 2, 2, t);
  CHECK(ok.feasible);
  CHECK(ok.nonzero() == std::vector<MuKey>{{2, 2, 0, 0}});
}

TEST_CASE("mu rows round trip") {
  MuTable t;
  t.set({4, 4, 0, 1}, 1);
  t.set({2, 2, 0, 0}, 0, MuSource::AssumedZero);
  t.set({6, 6, 0, 0}, 2, MuSource::Supplied);
  const auto back = MuTable::from_rows(t.to_rows());
  CHECK(back.to_rows() == t.to_rows());
  CHECK(back.at({2, 2, 0, 0}).source == MuSource::AssumedZero);
  CHECK_THROWS(MuTable::from_rows("1,2,3\n"));
}
