#ifndef CACTUS_COXETER_HPP
#define CACTUS_COXETER_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cactus/subset.hpp"

namespace cactus {

// m_{s,t} = infinity
inline constexpr int kBondInfinity = -1;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symmetric Coxeter matrix over a named generator set. Diagonal entries are
// implicitly 1, unlisted pairs are 2.
class CoxeterMatrix {
public:
  CoxeterMatrix(std::vector<std::string> generators,
                const std::vector<std::tuple<int, int, int>>& bonds);

  static CoxeterMatrix preset(const std::string& name);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generators() const { return names_; }
  const std::string& name(int i) const { return names_[i]; }
  int index_of(const std::string& name) const;  // -1 if absent

  int bond(int a, int b) const { return bonds_[a * rank() + b]; }
  bool adjacent(int a, int b) const {
    int m = bond(a, b);
    return a != b && (m == kBondInfinity || m >= 3);
  }
  Subset full_set() const { return Subset((rank() == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << rank()) - 1)); }

  // Induced matrix on a subset; keeps the original names.
  CoxeterMatrix induced(Subset x) const;

private:
  std::vector<std::string> names_;
  std::vector<int> bonds_;
};

enum class Family { A, B, D, E6, E7, E8, F4, H3, H4, I2 };

// Catalog label of a finite irreducible type, with a concrete isomorphism
// onto the reference vertex numbering of the catalog diagrams.
struct FiniteTypeLabel {
  Family family;
  int rank;
  int bond = 0;  // I2(m) only
  // reference_iso[k] = generator index playing reference vertex sigma_{k+1}
  std::vector<int> reference_iso;

  std::string name() const;
};

std::vector<Subset> connected_components(const CoxeterMatrix& m, Subset x);
bool is_irreducible(const CoxeterMatrix& m, Subset x);

// Exact catalog matching. Returns the label iff the induced labelled graph on
// the (connected) subset x is isomorphic to a catalog diagram. Low-rank
// coincidences are canonicalized: I2(3)=A2, I2(4)=B2, D3=A3.
std::optional<FiniteTypeLabel> recognize_finite_type(const CoxeterMatrix& m, Subset x);

// true iff every connected component of x is of catalog type
bool is_finite_group(const CoxeterMatrix& m, Subset x);

std::vector<Subset> decompose_components(const CoxeterMatrix& m);

// The conjugation action of the longest element of W_x on x, for x finite
// irreducible. image[k] is the image of x.members()[k].
std::vector<int> omega_action(const CoxeterMatrix& m, Subset x);

// omega_X applied to a subset y of x.
Subset omega_image_within(const CoxeterMatrix& m, Subset x, Subset y);

}  // namespace cactus

#endif
