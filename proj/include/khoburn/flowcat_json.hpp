#pragma once

#include "json.hpp"
#include "khoburn/flowcat.hpp"

// JSON form of a cubical flow category (schema in docs/formats.md). Object
// fibers and components are stored directly; composition tables and group
// maps are stored as label pairs, composite elements by their flattened
// labels, so files survive reordering of element lists.

namespace khoburn {

nlohmann::json flowcat_to_json(const CubicalFlowCategory& C);
CubicalFlowCategory flowcat_from_json(const nlohmann::json& j);

}  // namespace khoburn
