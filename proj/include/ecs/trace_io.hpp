#pragma once

#include <string>

#include "ecs/model.hpp"

namespace ecs {

// Serializes a trace to a JSON document with fields `root`, `steps`,
// `chooser_log` and `type`. Field names are stable and coordinates are
// printed with 17 significant digits, so identical traces serialize to
// byte-identical documents.
std::string trace_to_json(const Trace& trace);

// Extracts the chooser decisions from a serialized trace (for replay).
std::vector<Point> chooser_points_from_json(const std::string& json_text);

} // namespace ecs
