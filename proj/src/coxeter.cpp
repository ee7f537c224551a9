#include "cactus/coxeter.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cactus {

CoxeterMatrix::CoxeterMatrix(std::vector<std::string> generators,
                             const std::vector<std::tuple<int, int, int>>& bonds)
    : names_(std::move(generators)) {
  const int n = rank();
  if (n < 1) throw parse_error("generator count must be >= 1");
  if (n > Subset::kMaxRank) throw parse_error("at most 64 generators are supported");
  {
    std::set<std::string> seen;
    for (const auto& s : names_)
      if (!seen.insert(s).second) throw parse_error("duplicate generator name: " + s);
  }
  bonds_.assign(static_cast<std::size_t>(n) * n, 2);
  for (int i = 0; i < n; ++i) bonds_[i * n + i] = 1;
  std::map<std::pair<int, int>, int> explicit_entries;
  for (const auto& [a, b, v] : bonds) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw parse_error("bond index out of range");
    if (a == b) throw parse_error("bond on the diagonal");
    if (v != kBondInfinity && v < 2)
      throw parse_error("bond value must be >= 2 or infinity");
    auto key = std::minmax(a, b);
    auto [it, inserted] = explicit_entries.emplace(key, v);
    if (!inserted && it->second != v)
      throw parse_error("asymmetric explicit entries for pair (" + names_[a] + "," + names_[b] + ")");
    bonds_[a * n + b] = v;
    bonds_[b * n + a] = v;
  }
}

int CoxeterMatrix::index_of(const std::string& name) const {
  for (int i = 0; i < rank(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

CoxeterMatrix CoxeterMatrix::induced(Subset x) const {
  auto mem = x.members();
  std::vector<std::string> names;
  names.reserve(mem.size());
  for (int i : mem) names.push_back(names_[i]);
  std::vector<std::tuple<int, int, int>> bonds;
  for (std::size_t i = 0; i < mem.size(); ++i)
    for (std::size_t j = i + 1; j < mem.size(); ++j) {
      int v = bond(mem[i], mem[j]);
      if (v != 2) bonds.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
    }
  return CoxeterMatrix(std::move(names), bonds);
}

namespace {

std::vector<std::string> sigma_names(int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 1; i <= n; ++i) names.push_back("s" + std::to_string(i));
  return names;
}

CoxeterMatrix path_preset(int n, const std::vector<std::pair<int, int>>& labelled) {
  // path s1-s2-...-sn, all bonds 3 except the listed (edge-start, label) ones
  std::vector<std::tuple<int, int, int>> bonds;
  for (int i = 0; i + 1 < n; ++i) {
    int label = 3;
    for (auto [e, l] : labelled)
      if (e == i) label = l;
    bonds.emplace_back(i, i + 1, label);
  }
  return CoxeterMatrix(sigma_names(n), bonds);
}

CoxeterMatrix d_preset(int n) {
  // s1, s2 fork tips on s3, then the chain s3-s4-...-sn
  std::vector<std::tuple<int, int, int>> bonds;
  bonds.emplace_back(0, 2, 3);
  bonds.emplace_back(1, 2, 3);
  for (int i = 2; i + 1 < n; ++i) bonds.emplace_back(i, i + 1, 3);
  return CoxeterMatrix(sigma_names(n), bonds);
}

CoxeterMatrix e_preset(int n) {
  // path s1..s_{n-1} with s_n attached to s3
  std::vector<std::tuple<int, int, int>> bonds;
  for (int i = 0; i + 2 < n; ++i) bonds.emplace_back(i, i + 1, 3);
  bonds.emplace_back(2, n - 1, 3);
  return CoxeterMatrix(sigma_names(n), bonds);
}

}  // namespace

CoxeterMatrix CoxeterMatrix::preset(const std::string& name) {
  auto starts = [&](const char* p) { return name.rfind(p, 0) == 0; };
  if (starts("I2(") && name.back() == ')') {
    std::string arg = name.substr(3, name.size() - 4);
    if (arg == "inf")
      return CoxeterMatrix(sigma_names(2), {{0, 1, kBondInfinity}});
    int m = 0;
    try {
      m = std::stoi(arg);
    } catch (...) {
      throw parse_error("unknown preset: " + name);
    }
    if (m < 3) throw parse_error("I2(m) preset requires m >= 3");
    return CoxeterMatrix(sigma_names(2), {{0, 1, m}});
  }
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'B' || name[0] == 'D')) {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (...) {
      throw parse_error("unknown preset: " + name);
    }
    if (name[0] == 'A' && n >= 1 && n <= 8) return path_preset(n, {});
    if (name[0] == 'B' && n >= 2 && n <= 6) return path_preset(n, {{0, 4}});
    if (name[0] == 'D' && n >= 4 && n <= 7) return d_preset(n);
    throw parse_error("unknown preset: " + name);
  }
  if (name == "E6") return e_preset(6);
  if (name == "E7") return e_preset(7);
  if (name == "E8") return e_preset(8);
  if (name == "F4") return path_preset(4, {{1, 4}});
  if (name == "H3") return path_preset(3, {{1, 5}});
  if (name == "H4") return path_preset(4, {{2, 5}});
  throw parse_error("unknown preset: " + name);
}

std::string FiniteTypeLabel::name() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::B: return "B" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    case Family::F4: return "F4";
    case Family::H3: return "H3";
    case Family::H4: return "H4";
    case Family::I2: return "I2(" + std::to_string(bond) + ")";
  }
  return "?";
}

std::vector<Subset> connected_components(const CoxeterMatrix& m, Subset x) {
  std::vector<Subset> comps;
  Subset rest = x;
  while (!rest.empty()) {
    Subset comp = Subset::single(rest.min_member());
    for (;;) {
      Subset grown = comp;
      for (int i : rest.minus(comp).members())
        for (int j : comp.members())
          if (m.adjacent(i, j)) {
            grown = grown.with(i);
            break;
          }
      if (grown == comp) break;
      comp = grown;
    }
    comps.push_back(comp);
    rest = rest.minus(comp);
  }
  std::sort(comps.begin(), comps.end(), SubsetLess{});
  return comps;
}

bool is_irreducible(const CoxeterMatrix& m, Subset x) {
  if (x.empty()) throw std::invalid_argument("is_irreducible: empty subset");
  return connected_components(m, x).size() == 1;
}

std::vector<Subset> decompose_components(const CoxeterMatrix& m) {
  return connected_components(m, m.full_set());
}

namespace {

struct PathClass {
  Family family;
  int bond = 0;
};

// classify an oriented label sequence l1..l_{n-1}, n >= 3, bonds all finite
std::optional<PathClass> classify_path_labels(const std::vector<int>& l) {
  const int n = static_cast<int>(l.size()) + 1;
  int non3 = 0, pos = -1;
  for (int i = 0; i < n - 1; ++i)
    if (l[i] != 3) {
      ++non3;
      pos = i;
    }
  if (non3 == 0) return PathClass{Family::A};
  if (non3 > 1) return std::nullopt;
  if (l[pos] == 4) {
    if (pos == 0) return PathClass{Family::B};
    if (n == 4 && pos == 1) return PathClass{Family::F4};
    return std::nullopt;
  }
  if (l[pos] == 5 && pos == n - 2) {
    if (n == 3) return PathClass{Family::H3};
    if (n == 4) return PathClass{Family::H4};
  }
  return std::nullopt;
}

}  // namespace

std::optional<FiniteTypeLabel> recognize_finite_type(const CoxeterMatrix& m, Subset x) {
  const auto mem = x.members();
  const int n = static_cast<int>(mem.size());
  if (n == 0) return std::nullopt;
  if (connected_components(m, x).size() != 1) return std::nullopt;

  if (n == 1) return FiniteTypeLabel{Family::A, 1, 0, {mem[0]}};
  if (n == 2) {
    int v = m.bond(mem[0], mem[1]);
    if (v == kBondInfinity) return std::nullopt;
    if (v == 3) return FiniteTypeLabel{Family::A, 2, 0, {mem[0], mem[1]}};
    if (v == 4) return FiniteTypeLabel{Family::B, 2, 0, {mem[0], mem[1]}};
    return FiniteTypeLabel{Family::I2, 2, v, {mem[0], mem[1]}};
  }

  // collect induced edges; anything infinite or any cycle is out of catalog
  std::vector<std::vector<int>> adj(n);
  int edges = 0;
  bool all3 = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!m.adjacent(mem[i], mem[j])) continue;
      int v = m.bond(mem[i], mem[j]);
      if (v == kBondInfinity) return std::nullopt;
      if (v != 3) all3 = false;
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edges;
    }
  if (edges != n - 1) return std::nullopt;  // connected, so tree iff n-1 edges

  int fork = -1;
  for (int i = 0; i < n; ++i) {
    if (adj[i].size() > 3) return std::nullopt;
    if (adj[i].size() == 3) {
      if (fork >= 0) return std::nullopt;
      fork = i;
    }
  }

  auto lex_min = [](std::vector<std::vector<int>> cands) {
    std::sort(cands.begin(), cands.end());
    return cands.front();
  };

  if (fork < 0) {
    // a path; try both orientations
    std::vector<int> ends;
    for (int i = 0; i < n; ++i)
      if (adj[i].size() == 1) ends.push_back(i);
    std::vector<std::vector<int>> isos;
    std::optional<PathClass> cls;
    for (int e : ends) {
      std::vector<int> order{e};
      int prev = -1, cur = e;
      while (static_cast<int>(order.size()) < n) {
        for (int nb : adj[cur])
          if (nb != prev) {
            prev = cur;
            cur = nb;
            order.push_back(cur);
            break;
          }
      }
      std::vector<int> labels;
      for (int i = 0; i + 1 < n; ++i) labels.push_back(m.bond(mem[order[i]], mem[order[i + 1]]));
      if (auto c = classify_path_labels(labels)) {
        cls = c;
        std::vector<int> iso;
        for (int p : order) iso.push_back(mem[p]);
        isos.push_back(iso);
      }
    }
    if (isos.empty()) return std::nullopt;
    Family f = cls->family;
    int rank = (f == Family::A || f == Family::B) ? n : (f == Family::H3 ? 3 : 4);
    return FiniteTypeLabel{f, rank, 0, lex_min(std::move(isos))};
  }

  // one branch vertex: D or E shapes, unlabelled edges only
  if (!all3) return std::nullopt;
  std::vector<std::vector<int>> legs;  // inner-to-outer, excluding the fork
  for (int s : adj[fork]) {
    std::vector<int> leg{s};
    int prev = fork, cur = s;
    while (adj[cur].size() == 2) {
      for (int nb : adj[cur])
        if (nb != prev) {
          prev = cur;
          cur = nb;
          leg.push_back(cur);
          break;
        }
    }
    if (adj[cur].size() == 3) return std::nullopt;  // second fork reached
    legs.push_back(leg);
  }
  std::vector<std::size_t> len{legs[0].size(), legs[1].size(), legs[2].size()};
  std::sort(len.begin(), len.end());

  auto build_iso = [&](const std::vector<int>& tipA, const std::vector<int>& tipB,
                       const std::vector<int>& chain) {
    // D shape: sigma1, sigma2 = tips, sigma3 = fork, sigma4.. = chain
    std::vector<int> iso{mem[tipA[0]], mem[tipB[0]], mem[fork]};
    for (int p : chain) iso.push_back(mem[p]);
    return iso;
  };

  if (len[0] == 1 && len[1] == 1) {
    std::vector<std::vector<int>> isos;
    for (int c = 0; c < 3; ++c) {
      int a = (c + 1) % 3, b = (c + 2) % 3;
      if (legs[a].size() != 1 || legs[b].size() != 1) continue;
      if (static_cast<int>(legs[c].size()) != n - 3) continue;
      isos.push_back(build_iso(legs[a], legs[b], legs[c]));
      isos.push_back(build_iso(legs[b], legs[a], legs[c]));
    }
    if (isos.empty()) return std::nullopt;
    return FiniteTypeLabel{Family::D, n, 0, lex_min(std::move(isos))};
  }

  if (len[0] != 1 || len[1] != 2) return std::nullopt;
  Family f;
  if (len[2] == 2 && n == 6) f = Family::E6;
  else if (len[2] == 3 && n == 7) f = Family::E7;
  else if (len[2] == 4 && n == 8) f = Family::E8;
  else return std::nullopt;

  auto build_e_iso = [&](const std::vector<int>& two, const std::vector<int>& lng,
                         const std::vector<int>& one) {
    // reference: path sigma1..sigma_{n-1} with sigma_n on sigma3;
    // the 2-leg is (sigma2, sigma1) inner-to-outer, the long leg (sigma4, ...)
    std::vector<int> iso(n);
    iso[0] = mem[two[1]];
    iso[1] = mem[two[0]];
    iso[2] = mem[fork];
    for (std::size_t k = 0; k < lng.size(); ++k) iso[3 + k] = mem[lng[k]];
    iso[n - 1] = mem[one[0]];
    return iso;
  };

  std::vector<std::vector<int>> isos;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      int c = 3 - a - b;
      if (legs[a].size() == 2 && legs[b].size() == len[2] && legs[c].size() == 1)
        isos.push_back(build_e_iso(legs[a], legs[b], legs[c]));
    }
  return FiniteTypeLabel{f, n, 0, lex_min(std::move(isos))};
}

bool is_finite_group(const CoxeterMatrix& m, Subset x) {
  if (x.empty()) return true;
  for (Subset comp : connected_components(m, x))
    if (!recognize_finite_type(m, comp)) return false;
  return true;
}

std::vector<int> omega_action(const CoxeterMatrix& m, Subset x) {
  auto label = recognize_finite_type(m, x);
  if (!label) throw std::invalid_argument("omega_action: subset is not finite irreducible");
  const int n = label->rank;
  const auto& iso = label->reference_iso;
  // image of reference vertex k (0-based) under the longest-element action
  auto ref_image = [&](int k) {
    switch (label->family) {
      case Family::A: return n - 1 - k;
      case Family::D: return (n % 2 == 1 && k < 2) ? 1 - k : k;
      case Family::E6: return k <= 4 ? 4 - k : k;
      case Family::I2: return (label->bond % 2 == 1) ? 1 - k : k;
      default: return k;  // B, E7, E8, F4, H3, H4: -1 is central
    }
  };
  std::vector<int> image;
  for (int g : x.members()) {
    int k = -1;
    for (int i = 0; i < n; ++i)
      if (iso[i] == g) k = i;
    image.push_back(iso[ref_image(k)]);
  }
  return image;
}

Subset omega_image_within(const CoxeterMatrix& m, Subset x, Subset y) {
  if (!y.subset_of(x)) throw std::invalid_argument("omega_image_within: y must lie in x");
  auto mem = x.members();
  auto img = omega_action(m, x);
  Subset out;
  for (std::size_t i = 0; i < mem.size(); ++i)
    if (y.contains(mem[i])) out = out.with(img[i]);
  return out;
}

}  // namespace cactus
