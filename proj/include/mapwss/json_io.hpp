#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "mapwss/model.hpp"
#include "mapwss/mwss.hpp"
#include "mapwss/nmrf.hpp"
#include "mapwss/perfection.hpp"
#include "mapwss/structure.hpp"
#include "mapwss/submodular.hpp"

namespace mapwss {

using Json = nlohmann::ordered_json;

/// Parses JSON text; malformed input throws ParseError.
Json parse_json(std::string_view text);

/// {"variables": [{"name", "card"}], "potentials": [{"scope", "table"}]};
/// unknown keys are rejected.
RawModel raw_model_from_json(const Json& j);
Model model_from_json(const Json& j);
Json model_to_json(const Model& model);

/// {"nodes": [{"id", "group", "assignment", "weight"}], "edges": [[id, id]],
///  "constants": c}, plus "groups" and "pruned" so the graph re-imports
/// losslessly.
Json nmrf_to_json(const Nmrf& nmrf);
Nmrf nmrf_from_json(const Json& j);
std::string nmrf_to_dot(const Nmrf& nmrf);

Json report_to_json(const TractabilityReport& report, const Model& model);
Json cycle_to_json(const SignedCycle& cycle, const Model& model);
Json solution_to_json(const MapSolution& solution, const Model& model);
Json verdict_to_json(const PerfectionVerdict& verdict, const Nmrf& nmrf);

/// {"scope": [names], "table": [2^k values]}.
struct NamedPotential {
  std::vector<std::string> scope;
  HighOrderPotential psi;
};
NamedPotential potential_from_json(const Json& j);
Json representation_to_json(const IndicatorRepresentation& rep, const std::vector<std::string>& scope);
Json projection_to_json(const Projection& p, const std::vector<std::string>& scope);

}  // namespace mapwss
