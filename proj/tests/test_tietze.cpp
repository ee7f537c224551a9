#include "doctest.h"

#include <algorithm>
#include <set>

#include "cactus/cactus_group.hpp"
#include "cactus/coxeter.hpp"
#include "cactus/sections.hpp"
#include "cactus/tietze.hpp"

using namespace cactus;

namespace {

int count_tag(const Presentation& p, RelTag t) {
  int n = 0;
  for (const auto& r : p.relations)
    if (r.tag == t) ++n;
  return n;
}

// Z2-rank of the abelianization of a presentation whose generators are
// involutions: eliminate the relator exponent vectors over F2.
int f2_abelianization_rank(const Presentation& p) {
  std::vector<std::uint64_t> rows;
  for (const auto& r : p.relations) {
    std::uint64_t v = 0;
    for (int g : r.relator()) v ^= (std::uint64_t{1} << g);
    if (v) rows.push_back(v);
  }
  int rank = 0;
  for (int bit = 0; bit < static_cast<int>(p.generators.size()); ++bit) {
    std::uint64_t mask = std::uint64_t{1} << bit;
    auto pivot = std::find_if(rows.begin(), rows.end(), [&](auto r) { return r & mask; });
    if (pivot == rows.end()) continue;
    std::uint64_t pv = *pivot;
    rows.erase(pivot);
    for (auto& r : rows)
      if (r & mask) r ^= pv;
    ++rank;
  }
  return static_cast<int>(p.generators.size()) - rank;
}

std::vector<std::pair<std::vector<Subset>, std::vector<Subset>>> relation_set(
    const Presentation& p) {
  std::vector<std::pair<std::vector<Subset>, std::vector<Subset>>> out;
  for (const auto& r : p.relations) {
    std::vector<Subset> l, rr;
    for (int g : r.lhs) l.push_back(p.generators[g]);
    for (int g : r.rhs) rr.push_back(p.generators[g]);
    out.emplace_back(l, rr);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    auto key = [](const auto& pr) {
      std::vector<std::uint64_t> k;
      for (Subset s : pr.first) k.push_back(s.bits());
      k.push_back(~std::uint64_t{0});
      for (Subset s : pr.second) k.push_back(s.bits());
      return k;
    };
    return key(a) < key(b);
  });
  return out;
}

}  // namespace

TEST_CASE("odd dihedral minimal presentations are two involutions") {
  for (const char* name : {"I2(3)", "I2(5)", "I2(7)"}) {
    CAPTURE(name);
    auto m = CoxeterMatrix::preset(name);
    DerivedPresentation d = section_presentation(m, catalog_section(m));
    CHECK(d.base.generators.size() == 2);
    REQUIRE(d.base.relations.size() == 2);
    for (const auto& r : d.base.relations) CHECK(r.tag == RelTag::R1a);
  }
}

TEST_CASE("even dihedral keeps its commutations") {
  auto i4 = CoxeterMatrix::preset("I2(4)");
  DerivedPresentation d = section_presentation(i4, catalog_section(i4));
  CHECK(d.base.generators.size() == 3);
  CHECK(count_tag(d.base, RelTag::R1a) == 3);
  CHECK(count_tag(d.base, RelTag::R3a) == 2);
  CHECK(d.base.relations.size() == 5);
  CHECK(f2_abelianization_rank(d.base) == 3);
  // the retained commutations: both singletons commute with c_S
  std::set<std::pair<std::uint64_t, std::uint64_t>> comms;
  for (const auto& r : d.base.relations)
    if (r.tag == RelTag::R3a)
      comms.insert({d.base.generators[r.lhs[0]].bits(), d.base.generators[r.lhs[1]].bits()});
  std::set<std::pair<std::uint64_t, std::uint64_t>> expected{
      {Subset::of({0}).bits(), i4.full_set().bits()},
      {Subset::of({1}).bits(), i4.full_set().bits()}};
  CHECK(comms == expected);
  // a warning records that they survive the reduction
  bool warned = false;
  for (const auto& w : d.warnings)
    if (w.find("retained as R3a") != std::string::npos) warned = true;
  CHECK(warned);
}

TEST_CASE("A2 with the odd-style section reduces to two involutions") {
  auto a2 = CoxeterMatrix::preset("A2");
  SectionCandidate c = catalog_section(a2);  // prefixes: {s1}, S
  CHECK(c.lambda.size() == 2);
  DerivedPresentation d = section_presentation(a2, c);
  CHECK(d.base.generators.size() == 2);
  CHECK(d.base.relations.size() == 2);
  CHECK(count_tag(d.base, RelTag::R2b) == 0);
  CHECK(count_tag(d.base, RelTag::R3b) == 0);
}

TEST_CASE("pipeline stages and generator counts") {
  auto a3 = CoxeterMatrix::preset("A3");
  auto stages = derive_via_steps(a3, catalog_section(a3));
  REQUIRE(stages.size() == 4);
  CHECK(stages[3].presentation.generators.size() == 3);

  auto b3 = CoxeterMatrix::preset("B3");
  auto b_stages = derive_via_steps(b3, catalog_section(b3));
  CHECK(b_stages[3].presentation.generators.size() == 5);

  // a trivial section leaves every stage with the same relation count
  FSet f = enumerate_F(a3);
  auto t_stages = derive_via_steps(a3, trivial_section(f));
  Presentation p0 = defining_presentation(a3);
  for (const auto& st : t_stages) {
    CHECK(st.presentation.relations.size() == p0.relations.size());
    CHECK(st.traces.empty());
  }
  CHECK(t_stages[3].presentation.generators.size() == f.members.size());
}

TEST_CASE("the emitter and the pipeline agree") {
  for (const char* name : {"A2", "A3", "A4", "B3", "B4", "D4", "D5", "D6", "D7", "F4", "H3",
                           "H4", "I2(4)", "I2(5)", "I2(6)"}) {
    CAPTURE(name);
    auto m = CoxeterMatrix::preset(name);
    SectionCandidate c = catalog_section(m);
    DerivedPresentation d = section_presentation(m, c);
    auto stages = derive_via_steps(m, c);
    CHECK(relation_set(d.base) == relation_set(stages[3].presentation));
    CHECK(d.base.generators.size() == c.lambda.size());
  }
}

TEST_CASE("the emitter and the pipeline agree on trivial sections too") {
  for (const char* name : {"A3", "B3", "I2(5)"}) {
    CAPTURE(name);
    auto m = CoxeterMatrix::preset(name);
    SectionCandidate c = trivial_section(enumerate_F(m));
    DerivedPresentation d = section_presentation(m, c);
    auto stages = derive_via_steps(m, c);
    CHECK(relation_set(d.base) == relation_set(stages[3].presentation));
    Presentation p0 = defining_presentation(m);
    for (const auto& t : d.provenance) CHECK(replay_trace(p0, t));
  }
}

TEST_CASE("pipeline traces replay against their stage presentations") {
  for (const char* name : {"A3", "B3", "D5", "F4", "H3", "I2(5)"}) {
    CAPTURE(name);
    auto m = CoxeterMatrix::preset(name);
    auto stages = derive_via_steps(m, catalog_section(m));
    for (const auto& st : stages)
      for (const auto& t : st.traces) {
        if (!t.justified) continue;  // flagged removals carry no derivation
        std::string why;
        bool ok = replay_trace(st.presentation, t, &why);
        CAPTURE(st.name);
        CAPTURE(why);
        CHECK(ok);
      }
  }
}

TEST_CASE("derived relations replay against the defining presentation") {
  for (const char* name : {"A3", "B3", "D5", "H4", "I2(6)"}) {
    CAPTURE(name);
    auto m = CoxeterMatrix::preset(name);
    DerivedPresentation d = section_presentation(m, catalog_section(m));
    Presentation p0 = defining_presentation(m);
    CHECK(d.provenance.size() == d.base.relations.size());
    for (const auto& t : d.provenance) {
      std::string why;
      bool ok = replay_trace(p0, t, &why);
      CAPTURE(why);
      CHECK(ok);
    }
  }
}

TEST_CASE("a tampered trace does not replay") {
  auto a3 = CoxeterMatrix::preset("A3");
  DerivedPresentation d = section_presentation(a3, catalog_section(a3));
  Presentation p0 = defining_presentation(a3);
  REQUIRE(!d.provenance.empty());
  DerivationTrace bad = d.provenance.front();
  bad.start.push_back(bad.start.front());
  CHECK_FALSE(replay_trace(p0, bad));
}

TEST_CASE("H3 pipeline flags the unwitnessed commutation removal") {
  auto h3 = CoxeterMatrix::preset("H3");
  auto stages = derive_via_steps(h3, catalog_section(h3));
  bool flagged = false;
  for (const auto& t : stages[2].traces)
    if (!t.justified) flagged = true;
  CHECK(flagged);
  DerivedPresentation d = section_presentation(h3, catalog_section(h3));
  bool warned = false;
  for (const auto& w : d.warnings)
    if (w.find("without a conjugating witness") != std::string::npos) warned = true;
  CHECK(warned);
}

TEST_CASE("free product words reduce to alternating normal form") {
  FreeProductWord u = FreeProductWord::letter(0), v = FreeProductWord::letter(1);
  CHECK(u.times(u).is_identity());
  CHECK(u.times(v).times(v).times(u).is_identity());
  CHECK(u.times(v).str() == "u v");
  CHECK(v.times(u).times(v).letters.size() == 3);
}

TEST_CASE("free product quotients per dihedral parity") {
  auto i4 = CoxeterMatrix::preset("I2(4)");
  QuotientAssignment q4 = find_free_product_quotient(i4);
  CHECK(q4.images.at(Subset::of({0})) == FreeProductWord::letter(0));
  CHECK(q4.images.at(Subset::of({1})) == FreeProductWord::letter(1));
  CHECK(q4.images.at(i4.full_set()).is_identity());
  CHECK(verify_assignment(defining_presentation(i4), q4).ok);
  CHECK(verify_splitting(i4, q4).ok);

  auto i5 = CoxeterMatrix::preset("I2(5)");
  QuotientAssignment q5 = find_free_product_quotient(i5);
  CHECK(q5.images.at(Subset::of({0})) == FreeProductWord::letter(0));
  CHECK(q5.images.at(i5.full_set()) == FreeProductWord::letter(1));
  CHECK(q5.images.at(Subset::of({1})).letters == std::vector<int>{1, 0, 1});
  CHECK(verify_assignment(defining_presentation(i5), q5).ok);
  CHECK(verify_splitting(i5, q5).ok);

  // swapping only the u and v images in the odd case breaks an R2 relation
  QuotientAssignment swapped = q5;
  swapped.images.at(Subset::of({0})) = FreeProductWord::letter(1);
  swapped.images.at(i5.full_set()) = FreeProductWord::letter(0);
  CHECK_FALSE(verify_assignment(defining_presentation(i5), swapped).ok);

  // the all-identity assignment satisfies the relations but is not onto
  QuotientAssignment trivial;
  for (Subset x : enumerate_F(i5).members) trivial.images[x] = FreeProductWord::empty();
  CHECK(verify_assignment(defining_presentation(i5), trivial).ok);
  CHECK_FALSE(verify_splitting(i5, trivial).ok);
}

TEST_CASE("A3 quotient uses the omega_S pairing") {
  auto a3 = CoxeterMatrix::preset("A3");
  QuotientAssignment q = find_free_product_quotient(a3);
  CHECK(q.images.at(Subset::of({0, 1})) == FreeProductWord::letter(0));
  CHECK(q.images.at(a3.full_set()) == FreeProductWord::letter(1));
  CHECK(q.images.at(Subset::of({1, 2})).letters == std::vector<int>{1, 0, 1});
  CHECK(q.images.at(Subset::of({0})).is_identity());
  CHECK(verify_assignment(defining_presentation(a3), q).ok);
  CHECK(verify_splitting(a3, q).ok);
}

TEST_CASE("quotients exist for every nonabelian preset tried") {
  for (const char* name : {"A2", "A3", "A4", "B2", "B3", "D4", "D5", "F4", "H3", "I2(6)",
                           "I2(7)", "I2(inf)", "E6"}) {
    CAPTURE(name);
    auto m = CoxeterMatrix::preset(name);
    QuotientAssignment q = find_free_product_quotient(m);
    CHECK(verify_assignment(defining_presentation(m), q).ok);
    CHECK(verify_splitting(m, q).ok);
  }
  CoxeterMatrix abelian({"a", "b"}, {});
  CHECK_THROWS(find_free_product_quotient(abelian));
}

TEST_CASE("lower central series of Z2 * Z2") {
  LowerCentralResult g1 = lower_central_z2z2(1);
  CHECK(g1.whole_group);
  CHECK(g1.verified);

  LowerCentralResult g2 = lower_central_z2z2(2);
  CHECK(g2.exponent == 2);
  CHECK(g2.verified);

  LowerCentralResult g4 = lower_central_z2z2(4);
  CHECK(g4.exponent == 8);
  CHECK(g4.verified);

  for (int n = 2; n <= 6; ++n) {
    LowerCentralResult r = lower_central_z2z2(n);
    CHECK(r.exponent == (1LL << (n - 1)));
    CHECK(r.verified);
  }

  CHECK_THROWS(lower_central_z2z2(0));
  CHECK_THROWS(lower_central_z2z2(9));
}
