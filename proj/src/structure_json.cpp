#include "contractcase/dsl.hpp"
#include "contractcase/error.hpp"
#include "contractcase/json_codec.hpp"

namespace contractcase::json {

Value document_header(std::string_view kind) {
    Value doc = Value::object();
    doc["schema_version"] = kSchemaVersion;
    doc["document"] = kind;
    return doc;
}

void check_header(const Value& doc, std::string_view kind) {
    if (!doc.is_object()) throw SchemaError("document is not a JSON object");
    if (!doc.contains("schema_version"))
        throw SchemaError("missing required field 'schema_version'");
    const auto& v = doc["schema_version"];
    if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
        throw SchemaError("unsupported schema_version " + v.dump() + "; expected \"" +
                          std::string(kSchemaVersion) + "\"");
    const auto got = string_field(doc, "document", "document header");
    if (got != kind)
        throw SchemaError("expected a '" + std::string(kind) + "' document, found '" + got + "'");
}

Value parse_text(std::string_view text) {
    try {
        return Value::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const Value& value) { return value.dump(2) + "\n"; }

const Value& field(const Value& obj, std::string_view key, std::string_view where) {
    if (!obj.is_object()) throw SchemaError(std::string(where) + " is not an object");
    auto it = obj.find(key);
    if (it == obj.end())
        throw SchemaError("missing required field '" + std::string(key) + "' in " +
                          std::string(where));
    return *it;
}

std::string string_field(const Value& obj, std::string_view key, std::string_view where) {
    const auto& v = field(obj, key, where);
    if (!v.is_string())
        throw SchemaError("field '" + std::string(key) + "' in " + std::string(where) +
                          " must be a string");
    return v.get<std::string>();
}

Identifier id_field(const Value& obj, std::string_view key, std::string_view where) {
    auto s = string_field(obj, key, where);
    if (!is_identifier(s))
        throw SchemaError("field '" + std::string(key) + "' in " + std::string(where) +
                          " is not a valid identifier: \"" + s + "\"");
    return s;
}

bool bool_field(const Value& obj, std::string_view key, std::string_view where) {
    const auto& v = field(obj, key, where);
    if (!v.is_boolean())
        throw SchemaError("field '" + std::string(key) + "' in " + std::string(where) +
                          " must be a boolean");
    return v.get<bool>();
}

const Value& array_field(const Value& obj, std::string_view key, std::string_view where) {
    const auto& v = field(obj, key, where);
    if (!v.is_array())
        throw SchemaError("field '" + std::string(key) + "' in " + std::string(where) +
                          " must be an array");
    return v;
}

namespace {

Value encode_spec(const Specification& s) {
    Value v = Value::object();
    v["id"] = s.id;
    v["text"] = s.text;
    return v;
}

Specification decode_spec(const Value& v, SpecKind kind, std::string_view where) {
    Specification s;
    s.id = id_field(v, "id", where);
    s.kind = kind;
    s.text = string_field(v, "text", where);
    if (s.text.empty()) throw SchemaError("specification " + s.id + " has empty text");
    return s;
}

} // namespace

Value encode(const SpecificationStructure& s) {
    Value v = Value::object();
    Value comps = Value::array();
    for (const auto& c : s.components) {
        Value o = Value::object();
        o["id"] = c.id;
        o["parent"] = c.parent ? Value(*c.parent) : Value(nullptr);
        o["name"] = c.name;
        o["description"] = c.description;
        comps.push_back(std::move(o));
    }
    v["components"] = std::move(comps);

    Value contracts = Value::array();
    for (const auto& k : s.contracts) {
        Value o = Value::object();
        o["id"] = k.id;
        o["component"] = k.component;
        Value as = Value::array();
        for (const auto& a : k.assumptions) as.push_back(encode_spec(a));
        o["assumptions"] = std::move(as);
        o["guarantee"] = encode_spec(k.guarantee);
        contracts.push_back(std::move(o));
    }
    v["contracts"] = std::move(contracts);

    Value refinements = Value::array();
    for (const auto& r : s.refinements) {
        Value o = Value::object();
        o["id"] = r.id;
        o["source"] = r.source;
        o["target"] = r.target;
        refinements.push_back(std::move(o));
    }
    v["refinements"] = std::move(refinements);

    Value concerns = Value::array();
    for (const auto& [name, covers] : s.concerns) {
        Value o = Value::object();
        o["name"] = name;
        o["covers"] = Value(std::vector<std::string>(covers.begin(), covers.end()));
        concerns.push_back(std::move(o));
    }
    v["concerns"] = std::move(concerns);
    return v;
}

SpecificationStructure decode_structure(const Value& v) {
    SpecificationStructure s;
    for (const auto& o : array_field(v, "components", "structure")) {
        Component c;
        c.id = id_field(o, "id", "component");
        const auto& parent = field(o, "parent", "component " + c.id);
        if (!parent.is_null()) {
            if (!parent.is_string() || !is_identifier(parent.get<std::string>()))
                throw SchemaError("component " + c.id + " has an invalid parent");
            c.parent = parent.get<std::string>();
        }
        c.name = string_field(o, "name", "component " + c.id);
        c.description = string_field(o, "description", "component " + c.id);
        s.components.push_back(std::move(c));
    }
    for (const auto& o : array_field(v, "contracts", "structure")) {
        Contract k;
        k.id = id_field(o, "id", "contract");
        const std::string where = "contract " + k.id;
        k.component = id_field(o, "component", where);
        for (const auto& a : array_field(o, "assumptions", where))
            k.assumptions.push_back(decode_spec(a, SpecKind::Assumption, where));
        k.guarantee = decode_spec(field(o, "guarantee", where), SpecKind::Guarantee, where);
        s.contracts.push_back(std::move(k));
    }
    for (const auto& o : array_field(v, "refinements", "structure")) {
        Refinement r;
        r.id = id_field(o, "id", "refinement");
        r.source = id_field(o, "source", "refinement " + r.id);
        r.target = id_field(o, "target", "refinement " + r.id);
        s.refinements.push_back(std::move(r));
    }
    for (const auto& o : array_field(v, "concerns", "structure")) {
        const auto name = id_field(o, "name", "concern");
        std::set<Identifier> covers;
        for (const auto& g : array_field(o, "covers", "concern " + name)) {
            if (!g.is_string() || !is_identifier(g.get<std::string>()))
                throw SchemaError("concern " + name + " covers an invalid identifier");
            covers.insert(g.get<std::string>());
        }
        if (covers.empty()) throw SchemaError("concern " + name + " covers no guarantee");
        if (!s.concerns.emplace(name, std::move(covers)).second)
            throw SchemaError("duplicate concern '" + name + "'");
    }
    return s;
}

} // namespace contractcase::json

namespace contractcase {

std::string to_json(const SpecificationStructure& structure) {
    auto doc = json::document_header("structure");
    doc["structure"] = json::encode(structure);
    return json::dump(doc);
}

SpecificationStructure from_json(std::string_view text) {
    const auto doc = json::parse_text(text);
    json::check_header(doc, "structure");
    return json::decode_structure(json::field(doc, "structure", "document"));
}

} // namespace contractcase
