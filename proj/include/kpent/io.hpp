#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "kpent/measures.hpp"
#include "kpent/pi.hpp"
#include "kpent/roof.hpp"
#include "kpent/state.hpp"

namespace kpent::io {

using LoadedState = std::variant<PureState, DensityOperator>;

// State file schema: {"dims": [d1,...,dn], "amplitudes": [[re,im],...]} for a
// pure state or {"dims": ..., "matrix": [[re,im],...]} (row-major) for a
// density operator. Unknown fields are ignored. Parse failures throw
// std::invalid_argument naming the first offending field.
LoadedState parse_state(const nlohmann::json& j, const Tolerances& tol = {});
LoadedState load_state_file(const std::string& path, const Tolerances& tol = {});

nlohmann::ordered_json state_to_json(const PureState& state);
nlohmann::ordered_json state_to_json(const DensityOperator& op);

nlohmann::ordered_json report_to_json(const MeasureReport& report);
nlohmann::ordered_json roof_to_json(const RoofEstimate& estimate, const DensityOperator& source);
nlohmann::ordered_json pi_bound_to_json(const PiBoundReport& report);

}  // namespace kpent::io
