#include "contractcase/error.hpp"
#include "contractcase/persist.hpp"
#include "contractcase/reuse.hpp"

#include <fstream>
#include <sstream>

namespace contractcase {
namespace {

ClaimStatus parse_status(const std::string& s) {
    for (auto v : {ClaimStatus::Unsupported, ClaimStatus::Undefined, ClaimStatus::Assumed,
                   ClaimStatus::Supported})
        if (to_string(v) == s) return v;
    throw SchemaError("unknown claim status '" + s + "'");
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) throw Error("cannot write " + p.string());
}

bool is_hex_key(const std::string& key) {
    return key.size() == 64 && key.find_first_not_of("0123456789abcdef") == std::string::npos;
}

} // namespace

std::string record_to_json(const LibraryRecord& r) {
    auto doc = json::document_header("library-record");
    doc["key"] = r.key;
    doc["module"] = r.module;
    doc["kind"] = to_string(r.kind);
    doc["interface_premises"] = r.interface_premises;
    doc["interface_conclusions"] = r.interface_conclusions;
    json::Value nodes = json::Value::array();
    for (const auto& n : r.nodes) nodes.push_back(json::encode(n));
    doc["nodes"] = std::move(nodes);
    json::Value infs = json::Value::array();
    for (const auto& i : r.inferences) infs.push_back(json::encode(i));
    doc["inferences"] = std::move(infs);
    doc["axioms"] = r.axioms;
    json::Value status = json::Value::object();
    for (const auto& [claim, s] : r.status) status[claim] = to_string(s);
    doc["status"] = std::move(status);
    return json::dump(doc);
}

LibraryRecord record_from_json(std::string_view text) {
    const auto doc = json::parse_text(text);
    json::check_header(doc, "library-record");
    LibraryRecord r;
    r.key = json::string_field(doc, "key", "library record");
    if (!is_hex_key(r.key)) throw SchemaError("library record key is not a SHA-256 hex digest");
    r.module = json::id_field(doc, "module", "library record");
    const auto kind = json::string_field(doc, "kind", "library record");
    if (kind == "component")
        r.kind = ModuleKind::Component;
    else if (kind == "refinement")
        r.kind = ModuleKind::Refinement;
    else
        throw SchemaError("unknown module kind '" + kind + "'");
    auto ids = [&](std::string_view key) {
        std::vector<Identifier> out;
        for (const auto& v : json::array_field(doc, key, "library record")) {
            if (!v.is_string()) throw SchemaError("non-string entry in " + std::string(key));
            out.push_back(v.get<std::string>());
        }
        return out;
    };
    r.interface_premises = ids("interface_premises");
    r.interface_conclusions = ids("interface_conclusions");
    for (const auto& n : json::array_field(doc, "nodes", "library record"))
        r.nodes.push_back(json::decode_node(n));
    for (const auto& i : json::array_field(doc, "inferences", "library record"))
        r.inferences.push_back(json::decode_inference(i));
    r.axioms = ids("axioms");
    const auto& status = json::field(doc, "status", "library record");
    if (!status.is_object()) throw SchemaError("library record status must be an object");
    for (const auto& [claim, s] : status.items()) {
        if (!s.is_string()) throw SchemaError("status of " + claim + " must be a string");
        r.status.emplace(claim, parse_status(s.get<std::string>()));
    }
    return r;
}

ModuleLibrary ModuleLibrary::load(const std::filesystem::path& dir) {
    ModuleLibrary lib;
    const auto index_path = dir / "index.json";
    if (!std::filesystem::exists(index_path)) return lib;
    const auto index = json::parse_text(read_file(index_path));
    json::check_header(index, "library-index");
    for (const auto& e : json::array_field(index, "entries", "library index")) {
        const auto key = json::string_field(e, "key", "library index entry");
        if (!is_hex_key(key)) throw SchemaError("library index key is not a SHA-256 hex digest");
        auto rec = record_from_json(read_file(dir / (key + ".json")));
        if (rec.key != key)
            throw LibraryCorruptionError("record file " + key + ".json carries key " + rec.key);
        lib.insert(std::move(rec));
    }
    return lib;
}

void ModuleLibrary::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    auto index = json::document_header("library-index");
    json::Value entries = json::Value::array();
    for (const auto& [key, rec] : entries_) {
        write_file(dir / (key + ".json"), record_to_json(rec));
        json::Value e = json::Value::object();
        e["key"] = key;
        e["module"] = rec.module;
        e["kind"] = to_string(rec.kind);
        entries.push_back(std::move(e));
    }
    index["entries"] = std::move(entries);
    write_file(dir / "index.json", json::dump(index));
}

} // namespace contractcase
