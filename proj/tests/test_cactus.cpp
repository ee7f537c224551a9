#include "doctest.h"

#include <algorithm>
#include <set>

#include "cactus/cactus_group.hpp"
#include "cactus/coxeter.hpp"
#include "cactus/root_oracle.hpp"

using namespace cactus;

TEST_CASE("F enumeration") {
  auto i5 = CoxeterMatrix::preset("I2(5)");
  FSet f5 = enumerate_F(i5);
  REQUIRE(f5.members.size() == 3);
  CHECK(f5.members[0] == Subset::of({0}));
  CHECK(f5.members[1] == Subset::of({1}));
  CHECK(f5.members[2] == Subset::of({0, 1}));

  auto a3 = CoxeterMatrix::preset("A3");
  FSet f3 = enumerate_F(a3);
  REQUIRE(f3.members.size() == 6);
  CHECK(f3.contains(Subset::of({0, 1})));
  CHECK(f3.contains(Subset::of({1, 2})));
  CHECK_FALSE(f3.contains(Subset::of({0, 2})));
  CHECK(f3.contains(a3.full_set()));

  CoxeterMatrix a1a1({"a", "b"}, {});
  CHECK(enumerate_F(a1a1).members.size() == 2);

  auto iinf = CoxeterMatrix::preset("I2(inf)");
  CHECK(enumerate_F(iinf).members.size() == 2);
}

TEST_CASE("omega sets partition and stabilization") {
  auto a3 = CoxeterMatrix::preset("A3");
  FSet f = enumerate_F(a3);

  auto full = omega_sets(a3, f, a3.full_set());
  CHECK(full.omega0.size() == 5);
  CHECK(full.omegaP.empty());

  auto single = omega_sets(a3, f, Subset::of({0}));
  CHECK(single.omega0.empty());
  REQUIRE(single.omegaP.size() == 1);
  CHECK(single.omegaP[0] == Subset::of({2}));

  auto i6 = CoxeterMatrix::preset("I2(6)");
  FSet f6 = enumerate_F(i6);
  auto s6 = omega_sets(i6, f6, i6.full_set());
  CHECK(s6.omega0.size() == 2);
  CHECK(s6.omegaP.empty());

  CHECK_THROWS(omega_sets(a3, f, Subset::of({0, 2})));

  // partition, stabilization, and symmetry across several presets
  for (const char* name : {"A4", "B3", "D4", "H3", "F4", "I2(5)"}) {
    auto m = CoxeterMatrix::preset(name);
    FSet fm = enumerate_F(m);
    for (Subset x : fm.members) {
      auto o = omega_sets(m, fm, x);
      CHECK(o.omega.size() == o.omega0.size() + o.omegaP.size());
      std::set<std::uint64_t> seen;
      for (Subset y : o.omega) CHECK(seen.insert(y.bits()).second);
      for (Subset y : o.omega0) {
        Subset img = omega_map(m, x, y);
        CHECK(img.proper_subset_of(x));  // stays inside Omega0
        CHECK(fm.contains(img));
      }
      for (Subset y : o.omegaP) {
        CHECK(omega_map(m, x, y) == y);
        auto oy = omega_sets(m, fm, y);
        CHECK(std::count(oy.omegaP.begin(), oy.omegaP.end(), x) == 1);
      }
    }
  }
}

TEST_CASE("oracle agrees with the combinatorial Omega membership") {
  for (const char* name : {"A3", "B3", "D4", "I2(4)", "I2(5)", "H3"}) {
    auto m = CoxeterMatrix::preset(name);
    FSet f = enumerate_F(m);
    for (Subset x : f.members)
      for (Subset y : f.members) {
        if (y == x) continue;
        auto img = conjugate_subset(m, x, y);
        auto o = omega_sets(m, f, x);
        bool in_omega = std::count(o.omega.begin(), o.omega.end(), y) > 0;
        CHECK(in_omega == img.has_value());
        if (img) CHECK(*img == omega_map(m, x, y));
      }
  }
}

TEST_CASE("defining presentation families") {
  auto i4 = CoxeterMatrix::preset("I2(4)");
  Presentation p4 = defining_presentation(i4);
  REQUIRE(p4.generators.size() == 3);
  int r1 = 0, r2 = 0, r3 = 0;
  for (const auto& r : p4.relations) {
    if (r.tag == RelTag::R1) ++r1;
    if (r.tag == RelTag::R2) ++r2;
    if (r.tag == RelTag::R3) ++r3;
  }
  CHECK(r1 == 3);
  CHECK(r2 == 2);
  CHECK(r3 == 0);
  // both commutations read c_S c_x = c_x c_S with omega fixing x
  int full = p4.generator_index(i4.full_set());
  for (const auto& r : p4.relations)
    if (r.tag == RelTag::R2) {
      CHECK(r.lhs[0] == full);
      CHECK(r.lhs[1] == r.rhs[0]);
    }

  auto i3 = CoxeterMatrix::preset("I2(3)");
  Presentation p3 = defining_presentation(i3);
  for (const auto& r : p3.relations)
    if (r.tag == RelTag::R2) CHECK(r.lhs[1] != r.rhs[0]);  // odd case swaps

  auto a2 = CoxeterMatrix::preset("A2");
  Presentation pa2 = defining_presentation(a2);
  int n_r2 = 0;
  for (const auto& r : pa2.relations)
    if (r.tag == RelTag::R2) ++n_r2;
  CHECK(pa2.relations.size() == 5);
  CHECK(n_r2 == 2);
}

TEST_CASE("equivalence classes and abelianization") {
  auto a3 = CoxeterMatrix::preset("A3");
  EquivClasses e3 = equivalence_classes(a3);
  CHECK(e3.m == 3);
  CHECK(abelianization(a3).description == "Z2^3");

  auto b3 = CoxeterMatrix::preset("B3");
  CHECK(equivalence_classes(b3).m == 5);

  auto i4 = CoxeterMatrix::preset("I2(4)");
  CHECK(equivalence_classes(i4).m == 3);

  auto a1 = CoxeterMatrix::preset("A1");
  CHECK(abelianization(a1).m == 1);

  // m(A_n) = n, m(B_n) = 2n-1
  for (int n = 1; n <= 6; ++n)
    CHECK(equivalence_classes(CoxeterMatrix::preset("A" + std::to_string(n))).m == n);
  for (int n = 2; n <= 5; ++n)
    CHECK(equivalence_classes(CoxeterMatrix::preset("B" + std::to_string(n))).m == 2 * n - 1);

  // E7 and E8 stay within the combinatorial layer
  CHECK(enumerate_F(CoxeterMatrix::preset("E7")).members.size() > 30);
  CHECK(abelianization(CoxeterMatrix::preset("E8")).m > 0);

  // E6: the five A3 members land in one class
  auto e6 = CoxeterMatrix::preset("E6");
  EquivClasses ee = equivalence_classes(e6);
  int a3_class = ee.class_of(Subset::of({1, 2, 3}));
  REQUIRE(a3_class >= 0);
  CHECK(ee.classes[a3_class].size() == 5);
  for (const auto& cls : ee.classes)
    for (Subset s : cls)
      if (s.size() == 3 && recognize_finite_type(e6, s)->family == Family::A &&
          recognize_finite_type(e6, s)->rank == 3)
        CHECK(ee.class_of(s) == a3_class);

  // witnesses validate against the oracle at small rank
  for (const char* name : {"A3", "B3", "D4", "I2(5)"}) {
    auto m = CoxeterMatrix::preset(name);
    for (const auto& edge : equivalence_classes(m).class_edges) {
      auto img = conjugate_subset(m, edge.x, edge.y);
      REQUIRE(img.has_value());
      CHECK(*img == edge.z);
    }
  }

  // m is invariant under renaming
  auto d4 = CoxeterMatrix::preset("D4");
  std::vector<int> perm{3, 1, 0, 2};
  std::vector<std::string> names(4);
  for (int i = 0; i < 4; ++i) names[perm[i]] = d4.name(i);
  std::vector<std::tuple<int, int, int>> bonds;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (d4.bond(i, j) != 2) bonds.emplace_back(perm[i], perm[j], d4.bond(i, j));
  CHECK(equivalence_classes(CoxeterMatrix(names, bonds)).m == equivalence_classes(d4).m);
}

TEST_CASE("canonical transversal") {
  auto a3 = CoxeterMatrix::preset("A3");
  auto t = canonical_transversal(equivalence_classes(a3));
  REQUIRE(t.size() == 3);
  CHECK(t[0] == Subset::of({0}));
  CHECK(t[1] == Subset::of({0, 1}));
  CHECK(t[2] == a3.full_set());

  auto i5 = CoxeterMatrix::preset("I2(5)");
  auto t5 = canonical_transversal(equivalence_classes(i5));
  REQUIRE(t5.size() == 2);
  CHECK(t5[0] == Subset::of({0}));
  CHECK(t5[1] == i5.full_set());

  auto a1 = CoxeterMatrix::preset("A1");
  CHECK(canonical_transversal(equivalence_classes(a1)) == std::vector<Subset>{Subset::of({0})});
}

TEST_CASE("abelianness criterion") {
  CoxeterMatrix a1a1({"a", "b"}, {});
  CHECK(is_cactus_abelian(a1a1));
  CHECK_FALSE(is_cactus_abelian(CoxeterMatrix::preset("I2(3)")));
  CHECK_FALSE(is_cactus_abelian(CoxeterMatrix::preset("B3")));
  CHECK_FALSE(is_cactus_abelian(CoxeterMatrix::preset("I2(inf)")));
}

TEST_CASE("projection to W validates the defining relations") {
  for (const char* name : {"A3", "B2", "D4", "H3"}) {
    auto m = CoxeterMatrix::preset(name);
    auto rep = check_projection_to_W(m, defining_presentation(m));
    CHECK(rep.oracle_available);
    CHECK(rep.ok());
  }

  // a mutated commuting relation must fail: in A2, omega_S sigma1 omega_S = sigma2
  auto a2 = CoxeterMatrix::preset("A2");
  Presentation p = defining_presentation(a2);
  int full = p.generator_index(a2.full_set());
  int s1 = p.generator_index(Subset::of({0}));
  p.relations.push_back({{full, s1}, {s1, full}, RelTag::R2});
  auto rep = check_projection_to_W(a2, p);
  REQUIRE(rep.oracle_available);
  REQUIRE(rep.failed_relations.size() == 1);
  CHECK(rep.failed_relations[0] == static_cast<int>(p.relations.size()) - 1);

  auto iinf = CoxeterMatrix::preset("I2(inf)");
  CHECK_FALSE(check_projection_to_W(iinf, defining_presentation(iinf)).oracle_available);
}

TEST_CASE("infinite systems work through the combinatorial layer") {
  // affine triangle: every proper connected subset is finite, S is not
  CoxeterMatrix tri({"a", "b", "c"}, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
  FSet f = enumerate_F(tri);
  CHECK(f.members.size() == 6);
  CHECK_FALSE(f.contains(tri.full_set()));

  // singletons merge along the edges; the edges stay separate since no
  // member of F contains two of them
  EquivClasses e = equivalence_classes(tri);
  CHECK(e.m == 4);
  CHECK(abelianization(tri).description == "Z2^4");

  Presentation p = defining_presentation(tri);
  int r3 = 0;
  for (const auto& r : p.relations)
    if (r.tag == RelTag::R3) ++r3;
  CHECK(r3 == 0);  // every pair of subsets meets or is joined by an edge
  CHECK_FALSE(check_projection_to_W(tri, p).oracle_available);
}

TEST_CASE("cactus decomposition along components") {
  CoxeterMatrix block({"a", "b", "c"}, {{0, 1, 3}});  // A2 u A1
  auto parts = decompose_cactus(block);
  REQUIRE(parts.size() == 2);
  // canonical component order puts the singleton first
  CHECK(parts[0].second.generators.size() == 1);
  CHECK(parts[1].second.generators.size() == 3);

  auto e6 = CoxeterMatrix::preset("E6");
  CHECK(decompose_cactus(e6).size() == 1);

  CoxeterMatrix a1a1({"a", "b"}, {});
  auto two = decompose_cactus(a1a1);
  REQUIRE(two.size() == 2);
  for (auto& [sub, pres] : two) {
    CHECK(pres.generators.size() == 1);
    CHECK(pres.relations.size() == 1);
  }
}
