#ifndef CACTUS_SECTIONS_HPP
#define CACTUS_SECTIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cactus/cactus_group.hpp"
#include "cactus/coxeter.hpp"
#include "cactus/subset.hpp"

namespace cactus {

struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct no_section_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TriState { Unchecked, True, False };

// A candidate (Lambda, Psi): Psi maps every X in F to (bar, ring) in Lambda^2.
struct SectionCandidate {
  std::vector<Subset> lambda;  // canonical order
  std::map<Subset, std::pair<Subset, Subset>, SubsetLess> psi;
  TriState is_section = TriState::Unchecked;
  TriState is_transversal_section = TriState::Unchecked;
  TriState is_cross_section = TriState::Unchecked;

  bool in_lambda(Subset x) const;
};

struct SectionReport {
  bool ok = true;
  std::string condition;  // first violated condition
  std::string detail;
  // literal-quantifier findings that the adopted reading excludes (non-fatal)
  std::vector<std::string> literal_notes;
};

SectionCandidate trivial_section(const FSet& f);

// Section conditions (a), (b) and (c), with (c) quantified over
// disjoint-commuting pairs
// meeting Lambda. The literal all-pairs reading is evaluated as well and
// reported in literal_notes; see the README for why it cannot be the check.
SectionReport verify_section(const CoxeterMatrix& m, const SectionCandidate& c);

// section + Lambda meets every equivalence class exactly once
SectionReport verify_transversal_section(const CoxeterMatrix& m, const SectionCandidate& c);

// section + for every X outside Lambda there is exactly one pair
// (Y, Z) in Lambda^2 with Z in Omega0(Y) u {Y} and omega_Y(Z) = X, and Psi
// picks it. Uniqueness over X in Lambda is only reported in literal_notes.
SectionReport verify_cross_section(const CoxeterMatrix& m, const SectionCandidate& c);

// The per-type Lambda of the catalog, with Psi filled canonically.
// Throws no_section_error for E6/E7/E8.
SectionCandidate catalog_section(const CoxeterMatrix& m);

struct SearchStats {
  long long candidates = 0;
  long long pruned = 0;
};

struct SearchResult {
  std::optional<SectionCandidate> found;  // empty means ExhaustedNone
  SearchStats stats;
};

SearchResult search_transversal_section(const CoxeterMatrix& m, long long budget);
SearchResult search_cross_section(const CoxeterMatrix& m, long long budget);

// least valid (bar, ring) pair generating x from lambda, if any
std::optional<std::pair<Subset, Subset>> least_generating_pair(const CoxeterMatrix& m,
                                                               const std::vector<Subset>& lambda,
                                                               Subset x);

}  // namespace cactus

#endif
