#ifndef CACTUS_ROOT_ORACLE_HPP
#define CACTUS_ROOT_ORACLE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "cactus/coxeter.hpp"
#include "cactus/subset.hpp"

namespace cactus {

struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct oracle_undecidable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// tolerance for identifying roots by coordinates (cos(pi/5) etc. are irrational)
inline constexpr double kRootTolerance = 1e-8;
inline constexpr int kDefaultRootCap = 1000;
inline constexpr long long kDefaultOrderCap = 10'000'000;

// The root system of a finite-type standard parabolic W_x, realized in the
// reflection representation over the simple-root basis. Immutable once built.
struct RootSystem {
  std::vector<int> simple;                   // ambient generator indices, ascending
  std::vector<std::vector<double>> roots;    // coordinates; roots[k] = k-th simple root for k < rank
  std::vector<std::vector<int>> reflection;  // reflection[k][r] = image of root r under s_{simple[k]}
  std::vector<int> negative;                 // index of -roots[r]
  double tolerance = kRootTolerance;

  int rank() const { return static_cast<int>(simple.size()); }
  int root_count() const { return static_cast<int>(roots.size()); }
  bool is_positive(int r) const;
  int positive_count() const;
  int simple_position(int ambient_index) const;  // -1 if absent
};

// Closure of the simple roots under the simple reflections. Throws
// cap_exceeded ("not finite type at this cap") if more than cap roots appear.
RootSystem build_root_system(const CoxeterMatrix& m, Subset x, int cap = kDefaultRootCap);

// An element of W_x as a permutation of the root list.
struct OracleElement {
  std::vector<int> perm;

  bool operator==(const OracleElement& o) const { return perm == o.perm; }
  int apply(int r) const { return perm[r]; }
};

OracleElement identity_element(const RootSystem& rs);
OracleElement simple_reflection(const RootSystem& rs, int ambient_index);
// word is a list of ambient simple-generator indices; empty word = identity
OracleElement element_from_word(const RootSystem& rs, const std::vector<int>& word);
OracleElement compose(const RootSystem& rs, const OracleElement& a, const OracleElement& b);
OracleElement inverse(const RootSystem& rs, const OracleElement& a);
int element_length(const RootSystem& rs, const OracleElement& a);  // # positives sent negative

// The unique element sending every positive root to a negative one, by the
// descent algorithm.
OracleElement longest_element(const RootSystem& rs);

// Longest element of the standard parabolic W_y inside rs, y a subset of the
// generators rs was built on.
OracleElement parabolic_longest(const RootSystem& rs, Subset y);

// omega_x y omega_x as a subset of S when every conjugate is again a simple
// generator, None otherwise. Throws oracle_undecidable when x u y is not of
// finite type and y is not contained in x.
std::optional<Subset> conjugate_subset(const CoxeterMatrix& m, Subset x, Subset y);

// Number of distinct elements reachable by BFS over the simple generators.
long long group_order(const RootSystem& rs, long long cap = kDefaultOrderCap);

}  // namespace cactus

#endif
