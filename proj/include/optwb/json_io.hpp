#pragma once

#include "json.hpp"
#include "optwb/core.hpp"

namespace optwb {

/// `{"?x": "a", ...}`.
nlohmann::json mapping_to_json(const Mapping& m);

/// Inverse of mapping_to_json; keys must carry the `?` sigil.
/// Throws std::invalid_argument on malformed input.
Mapping mapping_from_json(const nlohmann::json& j);

}  // namespace optwb
