#pragma once

#include "json.hpp"
#include "khoburn/actions.hpp"

// JSON forms of group actions (schemas in docs/formats.md). Bijections and
// 2-morphisms are stored as label pairs, composite elements by their
// flattened labels, so files survive reordering of element lists. Reading
// needs the functor the action lives on.

namespace khoburn {

nlohmann::json cyclic_action_to_json(const CyclicAction& a);
CyclicAction cyclic_action_from_json(const nlohmann::json& j);

nlohmann::json rep_label_to_json(const RepLabel& r);
RepLabel rep_label_from_json(const nlohmann::json& j);

nlohmann::json musyt_to_json(const BurnsideFunctor& F, const MusytAction& phi);
MusytAction musyt_from_json(const nlohmann::json& j, const BurnsideFunctor& F);

nlohmann::json sz_to_json(const BurnsideFunctor& F, const SZAction& psi);
SZAction sz_from_json(const nlohmann::json& j, const BurnsideFunctor& F);

}  // namespace khoburn
