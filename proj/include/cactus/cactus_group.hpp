#ifndef CACTUS_CACTUS_GROUP_HPP
#define CACTUS_CACTUS_GROUP_HPP

#include <string>
#include <vector>

#include "cactus/coxeter.hpp"
#include "cactus/presentation.hpp"
#include "cactus/subset.hpp"

namespace cactus {

// F(W,S): all nonempty subsets X with W_X finite and irreducible, in
// canonical order.
struct FSet {
  std::vector<Subset> members;

  bool contains(Subset x) const;
  int index_of(Subset x) const;
};

FSet enumerate_F(const CoxeterMatrix& m);

struct OmegaSets {
  Subset base;
  std::vector<Subset> omega;   // Omega(X) = omega0 ++ omegaP, canonical order
  std::vector<Subset> omega0;  // Y strictly inside X
  std::vector<Subset> omegaP;  // Y disjoint from X with all cross-bonds 2
};

OmegaSets omega_sets(const CoxeterMatrix& m, const FSet& f, Subset x);

// omega_X(Y) for Y in Omega(X) u {X}: identity on the commuting part,
// conjugation inside X otherwise.
Subset omega_map(const CoxeterMatrix& m, Subset x, Subset y);

// Defining presentation: R1 per generator, R2 per (X, Y in Omega0(X)), R3
// once per unordered disjoint-commuting pair.
Presentation defining_presentation(const CoxeterMatrix& m);

struct EquivClasses {
  struct Edge {
    Subset x, y, z;  // z = omega_x(y)
  };
  std::vector<std::vector<Subset>> classes;  // canonical order, members sorted
  int m = 0;
  std::vector<Edge> class_edges;

  int class_of(Subset y) const;
};

// Transitive closure of Y ~ omega_X(Y) over X in F with Y in Omega(X).
EquivClasses equivalence_classes(const CoxeterMatrix& m);

struct Abelianization {
  int m;
  std::string description;  // "Z2^m"
};

Abelianization abelianization(const CoxeterMatrix& m);

std::vector<Subset> canonical_transversal(const EquivClasses& e);

bool is_cactus_abelian(const CoxeterMatrix& m);

struct ProjectionReport {
  bool oracle_available = false;
  std::vector<int> failed_relations;  // indices into the presentation
  bool ok() const { return oracle_available && failed_relations.empty(); }
};

// Substitute c_X -> omega_X and check every relation in W (W finite).
ProjectionReport check_projection_to_W(const CoxeterMatrix& m, const Presentation& p);

// Per-component matrices and presentations; checks that F members stay inside
// single components and that all cross-component relations are commutations.
std::vector<std::pair<CoxeterMatrix, Presentation>> decompose_cactus(const CoxeterMatrix& m);

}  // namespace cactus

#endif
