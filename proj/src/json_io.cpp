#include "cactus/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace cactus {

using nlohmann::json;

CoxeterMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators"))
    throw parse_error("input must be an object with a \"generators\" array");
  std::vector<std::string> names;
  for (const auto& g : j.at("generators")) names.push_back(g.get<std::string>());
  std::vector<std::tuple<int, int, int>> bonds;
  if (j.contains("bonds")) {
    for (const auto& b : j.at("bonds")) {
      std::string a = b.at("a").get<std::string>();
      std::string bb = b.at("b").get<std::string>();
      int m = 0;
      if (b.at("m").is_string()) {
        if (b.at("m").get<std::string>() != "inf")
          throw parse_error("bond value must be an integer or \"inf\"");
        m = kBondInfinity;
      } else {
        m = b.at("m").get<int>();
      }
      auto idx = [&](const std::string& name) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw parse_error("bond references unknown generator: " + name);
        return static_cast<int>(it - names.begin());
      };
      bonds.emplace_back(idx(a), idx(bb), m);
    }
  }
  return CoxeterMatrix(std::move(names), bonds);
}

json matrix_to_json(const CoxeterMatrix& m) {
  json j;
  j["generators"] = m.generators();
  json bonds = json::array();
  for (int i = 0; i < m.rank(); ++i)
    for (int k = i + 1; k < m.rank(); ++k) {
      int v = m.bond(i, k);
      if (v == 2) continue;
      json b;
      b["a"] = m.name(i);
      b["b"] = m.name(k);
      if (v == kBondInfinity)
        b["m"] = "inf";
      else
        b["m"] = v;
      bonds.push_back(b);
    }
  j["bonds"] = bonds;
  return j;
}

json subset_to_json(const CoxeterMatrix& m, Subset x) {
  json a = json::array();
  for (int i : x.members()) a.push_back(m.name(i));
  return a;
}

Subset subset_from_json(const CoxeterMatrix& m, const json& j) {
  Subset x;
  for (const auto& name : j) {
    int i = m.index_of(name.get<std::string>());
    if (i < 0) throw parse_error("unknown generator in subset: " + name.get<std::string>());
    x = x.with(i);
  }
  return x;
}

json presentation_to_json(const CoxeterMatrix& m, const Presentation& p) {
  json j;
  json gens = json::array();
  for (Subset g : p.generators) gens.push_back(subset_to_json(m, g));
  j["generators"] = gens;
  json rels = json::array();
  for (const auto& r : p.relations) {
    json jr;
    jr["tag"] = tag_name(r.tag);
    jr["lhs"] = r.lhs;
    jr["rhs"] = r.rhs;
    rels.push_back(jr);
  }
  j["relations"] = rels;
  return j;
}

json section_to_json(const CoxeterMatrix& m, const SectionCandidate& c) {
  json j;
  json lam = json::array();
  for (Subset x : c.lambda) lam.push_back(subset_to_json(m, x));
  j["lambda"] = lam;
  json psi = json::array();
  for (const auto& [x, pair] : c.psi) {
    json e;
    e["x"] = subset_to_json(m, x);
    e["bar"] = subset_to_json(m, pair.first);
    e["ring"] = subset_to_json(m, pair.second);
    psi.push_back(e);
  }
  j["psi"] = psi;
  return j;
}

SectionCandidate section_from_json(const CoxeterMatrix& m, const json& j) {
  SectionCandidate c;
  for (const auto& l : j.at("lambda")) c.lambda.push_back(subset_from_json(m, l));
  std::sort(c.lambda.begin(), c.lambda.end(), SubsetLess{});
  if (j.contains("psi")) {
    for (const auto& e : j.at("psi"))
      c.psi[subset_from_json(m, e.at("x"))] = {subset_from_json(m, e.at("bar")),
                                               subset_from_json(m, e.at("ring"))};
  } else {
    // fill canonically: identity on lambda, least generating pair elsewhere
    FSet f = enumerate_F(m);
    for (Subset x : f.members) {
      if (c.in_lambda(x)) {
        c.psi[x] = {x, x};
        continue;
      }
      auto pair = least_generating_pair(m, c.lambda, x);
      if (!pair) throw parse_error("lambda cannot generate " + generator_symbol(m, x));
      c.psi[x] = *pair;
    }
  }
  return c;
}

std::string emit_dot(const CoxeterMatrix& m, const SectionCandidate* section) {
  std::ostringstream os;
  os << "graph coxeter {\n";
  os << "  node [shape=circle];\n";
  for (int i = 0; i < m.rank(); ++i) os << "  \"" << m.name(i) << "\";\n";
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j) {
      int v = m.bond(i, j);
      if (v == 2) continue;
      os << "  \"" << m.name(i) << "\" -- \"" << m.name(j) << "\"";
      if (v == kBondInfinity)
        os << " [label=\"inf\"]";
      else if (v != 3)
        os << " [label=\"" << v << "\"]";
      os << ";\n";
    }
  if (section) {
    int k = 0;
    for (Subset x : section->lambda) {
      os << "  subgraph cluster_" << k++ << " {\n";
      os << "    label=\"" << generator_symbol(m, x) << "\";\n";
      for (int i : x.members()) os << "    \"" << m.name(i) << "\";\n";
      os << "  }\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace cactus
