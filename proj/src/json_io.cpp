#include "optwb/json_io.hpp"

#include <stdexcept>

namespace optwb {

nlohmann::json mapping_to_json(const Mapping& m) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [v, value] : m) out[v.str()] = value.name();
  return out;
}

Mapping mapping_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("mapping must be a JSON object");
  }
  Mapping out;
  for (const auto& [key, value] : j.items()) {
    if (key.empty() || key.front() != '?') {
      throw std::invalid_argument("mapping key '" + key +
                                  "' must start with '?'");
    }
    if (!value.is_string()) {
      throw std::invalid_argument("mapping value for " + key +
                                  " must be a string");
    }
    out.bind(Var(key.substr(1)), Iri(value.get<std::string>()));
  }
  return out;
}

}  // namespace optwb
