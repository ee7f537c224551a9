#include "cactus/presentation.hpp"

#include <sstream>

namespace cactus {

const char* tag_name(RelTag t) {
  switch (t) {
    case RelTag::R1: return "R1";
    case RelTag::R2: return "R2";
    case RelTag::R3: return "R3";
    case RelTag::R1a: return "R1a";
    case RelTag::R2a: return "R2a";
    case RelTag::R2b: return "R2b";
    case RelTag::R2c: return "R2c";
    case RelTag::R3a: return "R3a";
    case RelTag::R3b: return "R3b";
    case RelTag::R2hat: return "R2hat";
    case RelTag::R2hat_c: return "R2hat_c";
  }
  return "?";
}

std::string generator_symbol(const CoxeterMatrix& m, Subset x) {
  std::string s = "c{";
  bool first = true;
  for (int i : x.members()) {
    if (!first) s += ",";
    s += m.name(i);
    first = false;
  }
  s += "}";
  return s;
}

std::string render_word(const CoxeterMatrix& m, const Presentation& p, const std::vector<int>& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += " ";
    s += generator_symbol(m, p.generators[w[i]]);
  }
  return s;
}

std::string render_text(const CoxeterMatrix& m, const Presentation& p) {
  std::ostringstream os;
  for (const auto& r : p.relations) {
    os << "[" << tag_name(r.tag) << "] " << render_word(m, p, r.lhs) << " = "
       << render_word(m, p, r.rhs) << "\n";
  }
  return os.str();
}

std::string render_export(const Presentation& p) {
  std::ostringstream os;
  os << "generators";
  for (std::size_t i = 0; i < p.generators.size(); ++i) os << " g" << (i + 1);
  os << "\n";
  for (const auto& r : p.relations) {
    os << "relator";
    for (int g : r.relator()) os << " g" << (g + 1);
    os << "\n";
  }
  return os.str();
}

}  // namespace cactus
