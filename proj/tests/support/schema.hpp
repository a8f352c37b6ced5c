#pragma once

// Validator for the subset of JSON Schema used by docs/report.schema.json:
// $ref (local), type, properties, required, additionalProperties (boolean),
// items, minItems, maxItems, enum, const, oneOf, anyOf, pattern.

#include <string>

#include <json.hpp>

namespace schema {

// Empty when `doc` conforms, else the first violation with its JSON pointer.
std::string validate(const nlohmann::json& schema, const nlohmann::json& doc);

}  // namespace schema
