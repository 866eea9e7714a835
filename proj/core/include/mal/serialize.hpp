#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "mal/algebra.hpp"
#include "mal/crushed.hpp"
#include "mal/family.hpp"
#include "mal/integrate.hpp"
#include "mal/represent.hpp"
#include "mal/step.hpp"

namespace mal {

// Self-describing element records: {"kind":"dyadic","level":..,"mask":..},
// {"kind":"interval","ivals":[{"lo","hi"},..]}, {"kind":"finite","universe",
// "members"}, {"kind":"pair","left","right"}.
nlohmann::json element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const Family& fam);
Family family_from_json(const nlohmann::json& j);

// {"unit": element, "terms": [[coefficient, element], ...]}
nlohmann::json step_to_json(const StepElement& x);
StepElement step_from_json(const nlohmann::json& j);

// exact rational plus a 12-place decimal rendering (display only)
nlohmann::json integral_to_json(const IntegralValue& v);

nlohmann::json prob_space_to_json(const FiniteProbSpace& space);

nlohmann::json crushed_to_json(const CrushedStage& st, const CrushedReport& rep);

// Envelope every report shares: schema tag plus the command it came from.
nlohmann::json report_envelope(const std::string& command);

// "cell_lo,cell_hi,value" rows on the dyadic grid at the given level; the
// element must be constant on every grid cell.
std::string step_to_csv(const StepElement& x, std::uint32_t level);

// Parse/format helpers shared by the CLI.
std::string json_text(const nlohmann::json& j);
nlohmann::json parse_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace mal
