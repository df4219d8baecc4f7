#pragma once

#include "json.hpp"
#include "khoburn/burnside.hpp"

// JSON form of a Burnside functor (schema in docs/formats.md): vertex sets as
// arrays of labels keyed by vertex bitstring, edges as (label, src, tgt)
// triples, squares as pairs of flattened composite labels.

namespace khoburn {

nlohmann::json correspondence_to_json(const Correspondence& c);
Correspondence correspondence_from_json(const nlohmann::json& j);

nlohmann::json burnside_to_json(const BurnsideFunctor& F);
BurnsideFunctor burnside_from_json(const nlohmann::json& j);

}  // namespace khoburn
