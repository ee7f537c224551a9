#ifndef CACTUS_PRESENTATION_HPP
#define CACTUS_PRESENTATION_HPP

#include <string>
#include <vector>

#include "cactus/coxeter.hpp"
#include "cactus/subset.hpp"

namespace cactus {

enum class RelTag { R1, R2, R3, R1a, R2a, R2b, R2c, R3a, R3b, R2hat, R2hat_c };

const char* tag_name(RelTag t);

// A relation lhs = rhs between words over the generator list of the owning
// presentation. Every generator is an involution, so the relator is
// lhs followed by rhs reversed. R1-family relations have lhs = [x, x] and
// empty rhs.
struct Relation {
  std::vector<int> lhs, rhs;
  RelTag tag = RelTag::R1;

  std::vector<int> relator() const {
    std::vector<int> w = lhs;
    w.insert(w.end(), rhs.rbegin(), rhs.rend());
    return w;
  }
  bool operator==(const Relation& o) const {
    return lhs == o.lhs && rhs == o.rhs && tag == o.tag;
  }
};

struct Presentation {
  std::vector<Subset> generators;  // generator i names c_{generators[i]}
  std::vector<Relation> relations;

  int generator_index(Subset x) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == x) return static_cast<int>(i);
    return -1;
  }
};

std::string generator_symbol(const CoxeterMatrix& m, Subset x);  // c{s1,s2}
std::string render_word(const CoxeterMatrix& m, const Presentation& p, const std::vector<int>& w);
std::string render_text(const CoxeterMatrix& m, const Presentation& p);
// generator list plus relator words over g1..gk, for computer-algebra import
std::string render_export(const Presentation& p);

}  // namespace cactus

#endif
