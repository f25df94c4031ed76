#pragma once

// JSON value encoders shared by every persisted document. Objects use
// insertion-ordered keys; the order is the one written by these encoders and
// is documented in docs/json-schema.md.

#include "contractcase/model.hpp"

#include <json.hpp>

#include <string_view>

namespace contractcase::json {

using Value = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

// {"schema_version": "1", "document": <kind>}
Value document_header(std::string_view kind);

// Throws SchemaError unless the document carries schema_version "1" and the
// expected document kind.
void check_header(const Value& doc, std::string_view kind);

Value parse_text(std::string_view text);
std::string dump(const Value& value);

Value encode(const SpecificationStructure& structure);
SpecificationStructure decode_structure(const Value& value);

// Typed field access with SchemaError on mismatch; `where` names the
// enclosing object for messages.
const Value& field(const Value& obj, std::string_view key, std::string_view where);
std::string string_field(const Value& obj, std::string_view key, std::string_view where);
Identifier id_field(const Value& obj, std::string_view key, std::string_view where);
bool bool_field(const Value& obj, std::string_view key, std::string_view where);
const Value& array_field(const Value& obj, std::string_view key, std::string_view where);

} // namespace contractcase::json
