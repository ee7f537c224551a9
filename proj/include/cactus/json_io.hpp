#ifndef CACTUS_JSON_IO_HPP
#define CACTUS_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "cactus/cactus_group.hpp"
#include "cactus/coxeter.hpp"
#include "cactus/presentation.hpp"
#include "cactus/sections.hpp"

namespace cactus {

// {"generators": [names...], "bonds": [{"a": name, "b": name, "m": int|"inf"}]}
CoxeterMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const CoxeterMatrix& m);

nlohmann::json subset_to_json(const CoxeterMatrix& m, Subset x);
Subset subset_from_json(const CoxeterMatrix& m, const nlohmann::json& j);

nlohmann::json presentation_to_json(const CoxeterMatrix& m, const Presentation& p);

// {"lambda": [subset...], "psi": [{"x":..., "bar":..., "ring":...}]}
nlohmann::json section_to_json(const CoxeterMatrix& m, const SectionCandidate& c);
SectionCandidate section_from_json(const CoxeterMatrix& m, const nlohmann::json& j);

// DOT rendering of the Coxeter graph, with optional lambda overlays
std::string emit_dot(const CoxeterMatrix& m, const SectionCandidate* section = nullptr);

}  // namespace cactus

#endif
