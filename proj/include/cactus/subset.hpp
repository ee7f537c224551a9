#ifndef CACTUS_SUBSET_HPP
#define CACTUS_SUBSET_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace cactus {

// A subset of the generator set S, as a bitmask over generator indices.
// Canonical order everywhere is size-then-lexicographic on the sorted
// index sequence; this is what makes outputs reproducible.
class Subset {
public:
  static constexpr int kMaxRank = 64;

  Subset() = default;
  explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static Subset single(int i) { return Subset(std::uint64_t{1} << i); }
  static Subset of(std::initializer_list<int> is) {
    Subset s;
    for (int i : is) s.bits_ |= std::uint64_t{1} << i;
    return s;
  }
  static Subset range(int first, int last) {  // inclusive
    Subset s;
    for (int i = first; i <= last; ++i) s.bits_ |= std::uint64_t{1} << i;
    return s;
  }

  std::uint64_t bits() const { return bits_; }
  bool empty() const { return bits_ == 0; }
  int size() const { return __builtin_popcountll(bits_); }
  bool contains(int i) const { return (bits_ >> i) & 1; }
  bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }
  bool proper_subset_of(Subset o) const { return subset_of(o) && bits_ != o.bits_; }
  bool disjoint(Subset o) const { return (bits_ & o.bits_) == 0; }

  Subset unite(Subset o) const { return Subset(bits_ | o.bits_); }
  Subset intersect(Subset o) const { return Subset(bits_ & o.bits_); }
  Subset minus(Subset o) const { return Subset(bits_ & ~o.bits_); }
  Subset with(int i) const { return Subset(bits_ | (std::uint64_t{1} << i)); }
  Subset without(int i) const { return Subset(bits_ & ~(std::uint64_t{1} << i)); }

  std::vector<int> members() const {
    std::vector<int> v;
    v.reserve(size());
    for (std::uint64_t b = bits_; b;) {
      int i = __builtin_ctzll(b);
      v.push_back(i);
      b &= b - 1;
    }
    return v;
  }
  int min_member() const { return __builtin_ctzll(bits_); }

  bool operator==(const Subset& o) const { return bits_ == o.bits_; }
  bool operator!=(const Subset& o) const { return bits_ != o.bits_; }

private:
  std::uint64_t bits_ = 0;
};

// size-then-lex order on sorted member lists
inline bool canonical_less(Subset a, Subset b) {
  if (a.size() != b.size()) return a.size() < b.size();
  std::uint64_t x = a.bits(), y = b.bits();
  while (x && y) {
    int i = __builtin_ctzll(x), j = __builtin_ctzll(y);
    if (i != j) return i < j;
    x &= x - 1;
    y &= y - 1;
  }
  return false;
}

struct SubsetLess {
  bool operator()(Subset a, Subset b) const { return canonical_less(a, b); }
};

struct SubsetHash {
  std::size_t operator()(Subset s) const { return std::hash<std::uint64_t>{}(s.bits()); }
};

}  // namespace cactus

#endif
