#include "doctest.h"

#include "cactus/cactus_group.hpp"
#include "cactus/coxeter.hpp"
#include "cactus/root_oracle.hpp"

using namespace cactus;

TEST_CASE("root counts by closure") {
  auto a2 = CoxeterMatrix::preset("A2");
  auto rs = build_root_system(a2, a2.full_set());
  CHECK(rs.root_count() == 6);
  CHECK(rs.root_count() == 2 * rs.positive_count());

  auto b2 = CoxeterMatrix::preset("B2");
  CHECK(build_root_system(b2, b2.full_set()).root_count() == 8);

  CoxeterMatrix affine({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
  CHECK_THROWS_AS(build_root_system(affine, affine.full_set(), 200), cap_exceeded);
}

TEST_CASE("every root system closes with paired negatives") {
  for (const char* name : {"A4", "B3", "D4", "H3", "I2(7)", "F4"}) {
    auto m = CoxeterMatrix::preset(name);
    auto rs = build_root_system(m, m.full_set());
    CHECK(rs.root_count() == 2 * rs.positive_count());
    for (int r = 0; r < rs.root_count(); ++r) {
      CHECK(rs.negative[rs.negative[r]] == r);
      CHECK(rs.is_positive(r) != rs.is_positive(rs.negative[r]));
    }
  }
}

TEST_CASE("words multiply as permutations") {
  auto a2 = CoxeterMatrix::preset("A2");
  auto rs = build_root_system(a2, a2.full_set());
  CHECK(element_from_word(rs, {}) == identity_element(rs));
  CHECK(element_from_word(rs, {0, 0}) == identity_element(rs));
  CHECK(element_from_word(rs, {0, 1, 0}) == element_from_word(rs, {1, 0, 1}));

  auto b2 = CoxeterMatrix::preset("B2");
  auto rsb = build_root_system(b2, b2.full_set());
  CHECK(element_from_word(rsb, {0, 1, 0, 1}) == element_from_word(rsb, {1, 0, 1, 0}));
  CHECK_FALSE(element_from_word(rsb, {0, 1, 0}) == element_from_word(rsb, {1, 0, 1}));
  CHECK_THROWS(element_from_word(rsb, {5}));
}

TEST_CASE("longest element by descents") {
  auto a1 = CoxeterMatrix::preset("A1");
  auto rs1 = build_root_system(a1, a1.full_set());
  CHECK(longest_element(rs1) == element_from_word(rs1, {0}));

  auto a2 = CoxeterMatrix::preset("A2");
  auto rs2 = build_root_system(a2, a2.full_set());
  auto w0 = longest_element(rs2);
  CHECK(element_length(rs2, w0) == rs2.positive_count());
  CHECK(element_length(rs2, w0) == 3);

  auto i4 = CoxeterMatrix::preset("I2(4)");
  auto rs4 = build_root_system(i4, i4.full_set());
  CHECK(element_length(rs4, longest_element(rs4)) == 4);

  // w0 sends all positives negative and squares to the identity
  for (const char* name : {"A3", "B3", "D4", "H3"}) {
    auto m = CoxeterMatrix::preset(name);
    auto rs = build_root_system(m, m.full_set());
    auto w = longest_element(rs);
    for (int r = 0; r < rs.root_count(); ++r)
      if (rs.is_positive(r)) CHECK_FALSE(rs.is_positive(w.perm[r]));
    CHECK(compose(rs, w, w) == identity_element(rs));
  }
}

TEST_CASE("conjugate_subset matches the known small cases") {
  auto a2 = CoxeterMatrix::preset("A2");
  CHECK(conjugate_subset(a2, a2.full_set(), Subset::of({0})) == Subset::of({1}));

  auto b2 = CoxeterMatrix::preset("B2");
  CHECK(conjugate_subset(b2, b2.full_set(), Subset::of({0})) == Subset::of({0}));

  auto a3 = CoxeterMatrix::preset("A3");
  CHECK(conjugate_subset(a3, Subset::of({0, 1}), Subset::of({2})) == std::nullopt);

  auto iinf = CoxeterMatrix::preset("I2(inf)");
  CHECK_THROWS_AS(conjugate_subset(iinf, Subset::of({0}), Subset::of({1})), oracle_undecidable);
}

TEST_CASE("group orders") {
  auto a2 = CoxeterMatrix::preset("A2");
  CHECK(group_order(build_root_system(a2, a2.full_set())) == 6);
  auto b2 = CoxeterMatrix::preset("B2");
  CHECK(group_order(build_root_system(b2, b2.full_set())) == 8);
  auto h3 = CoxeterMatrix::preset("H3");
  CHECK(group_order(build_root_system(h3, h3.full_set())) == 120);
  auto i7 = CoxeterMatrix::preset("I2(7)");
  CHECK(group_order(build_root_system(i7, i7.full_set())) == 14);

  // self-consistency: BFS count vs factorial for A_n
  long long fact = 2;
  for (int n = 1; n <= 5; ++n) {
    auto m = CoxeterMatrix::preset("A" + std::to_string(n));
    CHECK(group_order(build_root_system(m, m.full_set())) == fact);
    fact *= (n + 2);
  }

  auto b2c = CoxeterMatrix::preset("B2");
  CHECK_THROWS_AS(group_order(build_root_system(b2c, b2c.full_set()), 3), cap_exceeded);
}

TEST_CASE("omega table equals oracle conjugation on presets") {
  for (const char* name : {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4",
                           "I2(3)", "I2(5)", "I2(6)", "A5", "D5", "H3"}) {
    auto m = CoxeterMatrix::preset(name);
    FSet f = enumerate_F(m);
    for (Subset x : f.members) {
      auto mem = x.members();
      auto table = omega_action(m, x);
      for (std::size_t i = 0; i < mem.size(); ++i) {
        auto img = conjugate_subset(m, x, Subset::single(mem[i]));
        REQUIRE(img.has_value());
        CHECK(*img == Subset::single(table[i]));
      }
    }
  }
}

TEST_CASE("conjugation identities for nested parabolics hold in the oracle") {
  for (const char* name : {"A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3",
                           "I2(5)", "I2(6)"}) {
    auto m = CoxeterMatrix::preset(name);
    FSet f = enumerate_F(m);
    for (Subset x : f.members) {
      RootSystem rs = build_root_system(m, x);
      OracleElement wx = parabolic_longest(rs, x);
      for (Subset y : f.members) {
        if (!y.proper_subset_of(x) && y != x) continue;
        OracleElement wy = parabolic_longest(rs, y);
        Subset xy = omega_image_within(m, x, y);
        OracleElement conj = compose(rs, wx, compose(rs, wy, wx));
        CHECK(conj == parabolic_longest(rs, xy));
        // (ii) on chains z <= y <= x
        for (Subset z : f.members) {
          if (!z.subset_of(y)) continue;
          Subset lhs = omega_image_within(m, x, omega_image_within(m, y, z));
          Subset rhs = omega_image_within(m, omega_image_within(m, x, y),
                                          omega_image_within(m, x, z));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("omega has order exactly two when the parabolic is bigger than Z2") {
  for (const char* name : {"A3", "B3", "H3", "I2(5)"}) {
    auto m = CoxeterMatrix::preset(name);
    FSet f = enumerate_F(m);
    for (Subset x : f.members) {
      RootSystem rs = build_root_system(m, x);
      OracleElement w = parabolic_longest(rs, x);
      CHECK(compose(rs, w, w) == identity_element(rs));
      if (group_order(rs) > 2) CHECK_FALSE(w == identity_element(rs));
    }
  }
}
