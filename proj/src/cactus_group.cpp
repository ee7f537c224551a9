#include "cactus/cactus_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cactus/root_oracle.hpp"

namespace cactus {

bool FSet::contains(Subset x) const { return index_of(x) >= 0; }

int FSet::index_of(Subset x) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (members[i] == x) return static_cast<int>(i);
  return -1;
}

FSet enumerate_F(const CoxeterMatrix& m) {
  // grow connected subsets breadth-first, then keep the finite-type ones
  std::set<std::uint64_t> connected;
  std::vector<Subset> frontier;
  for (int i = 0; i < m.rank(); ++i) {
    frontier.push_back(Subset::single(i));
    connected.insert(frontier.back().bits());
  }
  while (!frontier.empty()) {
    std::vector<Subset> next;
    for (Subset x : frontier)
      for (int i = 0; i < m.rank(); ++i) {
        if (x.contains(i)) continue;
        bool touch = false;
        for (int j : x.members())
          if (m.adjacent(i, j)) touch = true;
        if (!touch) continue;
        Subset y = x.with(i);
        if (connected.insert(y.bits()).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  FSet f;
  for (std::uint64_t b : connected) {
    Subset x(b);
    if (recognize_finite_type(m, x)) f.members.push_back(x);
  }
  std::sort(f.members.begin(), f.members.end(), SubsetLess{});
  return f;
}

namespace {

bool disjoint_commuting(const CoxeterMatrix& m, Subset x, Subset y) {
  if (!x.disjoint(y)) return false;
  for (int i : x.members())
    for (int j : y.members())
      if (m.bond(i, j) != 2) return false;
  return true;
}

}  // namespace

OmegaSets omega_sets(const CoxeterMatrix& m, const FSet& f, Subset x) {
  if (!f.contains(x)) throw std::invalid_argument("omega_sets: x not in F");
  OmegaSets o;
  o.base = x;
  for (Subset y : f.members) {
    if (y == x) continue;
    if (y.proper_subset_of(x))
      o.omega0.push_back(y);
    else if (disjoint_commuting(m, x, y))
      o.omegaP.push_back(y);
  }
  o.omega = o.omega0;
  o.omega.insert(o.omega.end(), o.omegaP.begin(), o.omegaP.end());
  std::sort(o.omega.begin(), o.omega.end(), SubsetLess{});
  return o;
}

Subset omega_map(const CoxeterMatrix& m, Subset x, Subset y) {
  if (y.subset_of(x)) return omega_image_within(m, x, y);
  if (disjoint_commuting(m, x, y)) return y;
  throw std::invalid_argument("omega_map: y not in Omega(x) u {x}");
}

Presentation defining_presentation(const CoxeterMatrix& m) {
  FSet f = enumerate_F(m);
  Presentation p;
  p.generators = f.members;
  for (std::size_t i = 0; i < f.members.size(); ++i)
    p.relations.push_back({{static_cast<int>(i), static_cast<int>(i)}, {}, RelTag::R1});
  for (std::size_t i = 0; i < f.members.size(); ++i) {
    Subset x = f.members[i];
    OmegaSets o = omega_sets(m, f, x);
    for (Subset y : o.omega0) {
      Subset z = omega_map(m, x, y);
      p.relations.push_back({{static_cast<int>(i), f.index_of(y)},
                             {f.index_of(z), static_cast<int>(i)},
                             RelTag::R2});
    }
  }
  // commuting relations once per unordered pair, lesser generator first
  for (std::size_t i = 0; i < f.members.size(); ++i)
    for (std::size_t j = i + 1; j < f.members.size(); ++j)
      if (disjoint_commuting(m, f.members[i], f.members[j]))
        p.relations.push_back({{static_cast<int>(i), static_cast<int>(j)},
                               {static_cast<int>(j), static_cast<int>(i)},
                               RelTag::R3});
  return p;
}

int EquivClasses::class_of(Subset y) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (Subset s : classes[c])
      if (s == y) return static_cast<int>(c);
  return -1;
}

EquivClasses equivalence_classes(const CoxeterMatrix& m) {
  FSet f = enumerate_F(m);
  const int n = static_cast<int>(f.members.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  EquivClasses e;
  for (int i = 0; i < n; ++i) {
    Subset x = f.members[i];
    OmegaSets o = omega_sets(m, f, x);
    for (Subset y : o.omega) {
      Subset z = omega_map(m, x, y);
      if (z != y) {
        unite(f.index_of(y), f.index_of(z));
        e.class_edges.push_back({x, y, z});
      }
    }
  }
  std::map<int, std::vector<Subset>> buckets;
  for (int i = 0; i < n; ++i) buckets[find(i)].push_back(f.members[i]);
  for (auto& [root, members] : buckets) {
    std::sort(members.begin(), members.end(), SubsetLess{});
    e.classes.push_back(members);
  }
  std::sort(e.classes.begin(), e.classes.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.front(), b.front()); });
  e.m = static_cast<int>(e.classes.size());
  return e;
}

Abelianization abelianization(const CoxeterMatrix& m) {
  EquivClasses e = equivalence_classes(m);
  return {e.m, "Z2^" + std::to_string(e.m)};
}

std::vector<Subset> canonical_transversal(const EquivClasses& e) {
  std::vector<Subset> t;
  for (const auto& cls : e.classes) t.push_back(cls.front());
  std::sort(t.begin(), t.end(), SubsetLess{});
  return t;
}

bool is_cactus_abelian(const CoxeterMatrix& m) {
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j)
      if (m.bond(i, j) != 2) return false;
  return true;
}

ProjectionReport check_projection_to_W(const CoxeterMatrix& m, const Presentation& p) {
  ProjectionReport rep;
  if (!is_finite_group(m, m.full_set())) return rep;  // oracle unavailable
  rep.oracle_available = true;
  RootSystem rs = build_root_system(m, m.full_set());
  std::vector<OracleElement> omega;
  omega.reserve(p.generators.size());
  for (Subset x : p.generators) omega.push_back(parabolic_longest(rs, x));
  auto eval = [&](const std::vector<int>& word) {
    OracleElement w = identity_element(rs);
    for (int g : word) w = compose(rs, w, omega[g]);
    return w;
  };
  for (std::size_t i = 0; i < p.relations.size(); ++i)
    if (!(eval(p.relations[i].lhs) == eval(p.relations[i].rhs)))
      rep.failed_relations.push_back(static_cast<int>(i));
  return rep;
}

std::vector<std::pair<CoxeterMatrix, Presentation>> decompose_cactus(const CoxeterMatrix& m) {
  auto comps = decompose_components(m);
  FSet f = enumerate_F(m);
  for (Subset x : f.members) {
    bool inside = false;
    for (Subset c : comps)
      if (x.subset_of(c)) inside = true;
    if (!inside) throw std::logic_error("F member crosses component boundary");
  }
  Presentation global = defining_presentation(m);
  for (const auto& r : global.relations) {
    std::set<int> comps_touched;
    for (int g : r.relator())
      for (std::size_t c = 0; c < comps.size(); ++c)
        if (global.generators[g].subset_of(comps[c])) comps_touched.insert(static_cast<int>(c));
    if (comps_touched.size() > 1 && r.tag != RelTag::R3)
      throw std::logic_error("cross-component relation is not a commutation");
  }
  std::vector<std::pair<CoxeterMatrix, Presentation>> out;
  for (Subset c : comps) {
    CoxeterMatrix sub = m.induced(c);
    out.emplace_back(sub, defining_presentation(sub));
  }
  return out;
}

}  // namespace cactus
