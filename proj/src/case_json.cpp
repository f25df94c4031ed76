#include "contractcase/persist.hpp"

#include "contractcase/error.hpp"

namespace contractcase::json {
namespace {

std::vector<Identifier> id_list(const Value& obj, std::string_view key, std::string_view where) {
    std::vector<Identifier> out;
    for (const auto& v : array_field(obj, key, where)) {
        if (!v.is_string() || !is_identifier(v.get<std::string>()))
            throw SchemaError("field '" + std::string(key) + "' in " + std::string(where) +
                              " must list identifiers");
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace

Value encode(const AssuranceArchitecture& a) {
    Value v = Value::object();
    Value cms = Value::array();
    for (const auto& m : a.component_modules) {
        Value o = Value::object();
        o["id"] = m.id;
        o["component"] = m.component;
        o["contracts"] = m.contracts;
        o["interface_premises"] = m.interface_premises;
        o["interface_conclusions"] = m.interface_conclusions;
        cms.push_back(std::move(o));
    }
    v["component_modules"] = std::move(cms);
    Value rms = Value::array();
    for (const auto& m : a.refinement_modules) {
        Value o = Value::object();
        o["id"] = m.id;
        o["refinement"] = m.refinement;
        o["premise_spec"] = m.premise_spec;
        o["conclusion_spec"] = m.conclusion_spec;
        rms.push_back(std::move(o));
    }
    v["refinement_modules"] = std::move(rms);
    Value bs = Value::array();
    for (const auto& b : a.bindings) {
        Value o = Value::object();
        o["from_module"] = b.from_module;
        o["from_claim"] = b.from_claim;
        o["to_module"] = b.to_module;
        o["to_claim"] = b.to_claim;
        bs.push_back(std::move(o));
    }
    v["bindings"] = std::move(bs);
    return v;
}

AssuranceArchitecture decode_architecture(const Value& v) {
    AssuranceArchitecture a;
    for (const auto& o : array_field(v, "component_modules", "architecture")) {
        ComponentModule m;
        m.id = id_field(o, "id", "component module");
        m.component = id_field(o, "component", m.id);
        m.contracts = id_list(o, "contracts", m.id);
        m.interface_premises = id_list(o, "interface_premises", m.id);
        m.interface_conclusions = id_list(o, "interface_conclusions", m.id);
        a.component_modules.push_back(std::move(m));
    }
    for (const auto& o : array_field(v, "refinement_modules", "architecture")) {
        RefinementModule m;
        m.id = id_field(o, "id", "refinement module");
        m.refinement = id_field(o, "refinement", m.id);
        m.premise_spec = id_field(o, "premise_spec", m.id);
        m.conclusion_spec = id_field(o, "conclusion_spec", m.id);
        a.refinement_modules.push_back(std::move(m));
    }
    for (const auto& o : array_field(v, "bindings", "architecture")) {
        Binding b;
        b.from_module = id_field(o, "from_module", "binding");
        b.from_claim = id_field(o, "from_claim", "binding");
        b.to_module = id_field(o, "to_module", "binding");
        b.to_claim = id_field(o, "to_claim", "binding");
        a.bindings.push_back(std::move(b));
    }
    return a;
}

Value encode(const ArgumentNode& n) {
    Value o = Value::object();
    o["id"] = n.id;
    o["kind"] = to_string(n.kind);
    o["module"] = n.module;
    o["text"] = n.text;
    o["developed"] = n.developed;
    if (n.kind == NodeKind::Evidence) {
        o["artifact"] = n.artifact;
        o["trusted"] = n.trusted;
        o["supports"] = n.supports ? Value(*n.supports) : Value(nullptr);
    }
    return o;
}

ArgumentNode decode_node(const Value& o) {
    ArgumentNode n;
    n.id = id_field(o, "id", "node");
    const auto where = "node " + n.id;
    const auto kind = parse_node_kind(string_field(o, "kind", where));
    if (!kind) throw SchemaError(where + " has an unknown kind");
    n.kind = *kind;
    // Fragments may omit the module; attach_fragment fills it in.
    if (o.contains("module")) n.module = string_field(o, "module", where);
    n.text = string_field(o, "text", where);
    n.developed = o.contains("developed") ? bool_field(o, "developed", where) : true;
    if (n.kind == NodeKind::Evidence) {
        n.artifact = string_field(o, "artifact", where);
        n.trusted = bool_field(o, "trusted", where);
        if (o.contains("supports") && !o["supports"].is_null())
            n.supports = id_field(o, "supports", where);
    }
    return n;
}

Value encode(const Inference& inf) {
    Value o = Value::object();
    o["strategy"] = inf.strategy;
    o["premises"] = inf.premises;
    o["conclusion"] = inf.conclusion;
    o["justification"] = inf.justification ? Value(*inf.justification) : Value(nullptr);
    o["contexts"] = inf.contexts;
    return o;
}

Inference decode_inference(const Value& o) {
    Inference inf;
    inf.strategy = id_field(o, "strategy", "inference");
    const auto where = "inference " + inf.strategy;
    inf.premises = id_list(o, "premises", where);
    inf.conclusion = id_field(o, "conclusion", where);
    if (o.contains("justification") && !o["justification"].is_null())
        inf.justification = id_field(o, "justification", where);
    if (o.contains("contexts")) inf.contexts = id_list(o, "contexts", where);
    return inf;
}

Value encode(const NodeRef& ref) {
    Value o = Value::object();
    o["module"] = ref.module;
    o["node"] = ref.node;
    return o;
}

NodeRef decode_ref(const Value& o) {
    return {id_field(o, "module", "node reference"), id_field(o, "node", "node reference")};
}

Value encode_case(const AssuranceCase& c) {
    Value v = Value::object();
    v["structure"] = encode(c.structure());
    v["architecture"] = encode(c.architecture());
    Value nodes = Value::array();
    for (const auto& [ref, n] : c.nodes()) nodes.push_back(encode(n));
    v["nodes"] = std::move(nodes);
    Value infs = Value::array();
    for (const auto& [key, mi] : c.inferences()) {
        Value o = Value::object();
        o["module"] = mi.module;
        const auto inf = encode(mi.inference);
        for (const auto& [k, val] : inf.items()) o[k] = val;
        infs.push_back(std::move(o));
    }
    v["inferences"] = std::move(infs);
    Value axioms = Value::array();
    for (const auto& a : c.axioms()) axioms.push_back(encode(a));
    v["axioms"] = std::move(axioms);
    return v;
}

AssuranceCase decode_case(const Value& v) {
    auto structure = decode_structure(field(v, "structure", "case"));
    auto architecture = decode_architecture(field(v, "architecture", "case"));
    std::vector<ArgumentNode> nodes;
    for (const auto& o : array_field(v, "nodes", "case")) {
        auto n = decode_node(o);
        if (!is_identifier(n.module)) throw SchemaError("node " + n.id + " has no module");
        nodes.push_back(std::move(n));
    }
    std::vector<ModuleInference> infs;
    for (const auto& o : array_field(v, "inferences", "case"))
        infs.push_back({id_field(o, "module", "inference"), decode_inference(o)});
    std::set<NodeRef> axioms;
    for (const auto& o : array_field(v, "axioms", "case")) axioms.insert(decode_ref(o));
    try {
        return AssuranceCase::assemble(std::move(structure), std::move(architecture),
                                       std::move(nodes), std::move(infs), std::move(axioms));
    } catch (const CaseError& e) {
        throw SchemaError(std::string("inconsistent case document: ") + e.what());
    }
}

} // namespace contractcase::json

namespace contractcase {

std::string architecture_to_json(const AssuranceArchitecture& architecture) {
    auto doc = json::document_header("architecture");
    doc["architecture"] = json::encode(architecture);
    return json::dump(doc);
}

std::string template_to_json(const ArgumentTemplate& tmpl) {
    auto doc = json::document_header("template");
    doc["module"] = tmpl.module;
    json::Value nodes = json::Value::array();
    for (const auto& n : tmpl.nodes) {
        auto o = json::encode(n);
        auto it = tmpl.scope.find(n.id);
        o["scope"] = to_string(it == tmpl.scope.end() ? Scope::Internal : it->second);
        nodes.push_back(std::move(o));
    }
    doc["nodes"] = std::move(nodes);
    json::Value infs = json::Value::array();
    for (const auto& inf : tmpl.inferences) infs.push_back(json::encode(inf));
    doc["inferences"] = std::move(infs);
    return json::dump(doc);
}

std::string case_to_json(const AssuranceCase& c) {
    auto doc = json::document_header("case");
    const auto body = json::encode_case(c);
    for (const auto& [k, v] : body.items()) doc[k] = v;
    return json::dump(doc);
}

AssuranceCase case_from_json(std::string_view text) {
    const auto doc = json::parse_text(text);
    json::check_header(doc, "case");
    return json::decode_case(doc);
}

std::string fragments_to_json(const FragmentSet& set) {
    auto doc = json::document_header("fragment");
    json::Value fragments = json::Value::array();
    for (const auto& f : set.fragments) {
        json::Value o = json::Value::object();
        o["module"] = f.module;
        json::Value nodes = json::Value::array();
        for (const auto& n : f.nodes) nodes.push_back(json::encode(n));
        o["nodes"] = std::move(nodes);
        json::Value infs = json::Value::array();
        for (const auto& i : f.inferences) infs.push_back(json::encode(i));
        o["inferences"] = std::move(infs);
        fragments.push_back(std::move(o));
    }
    doc["fragments"] = std::move(fragments);
    json::Value axioms = json::Value::array();
    for (const auto& a : set.axioms) axioms.push_back(to_string(a));
    doc["axioms"] = std::move(axioms);
    return json::dump(doc);
}

FragmentSet fragments_from_json(std::string_view text) {
    const auto doc = json::parse_text(text);
    json::check_header(doc, "fragment");
    FragmentSet set;
    for (const auto& o : json::array_field(doc, "fragments", "fragment document")) {
        Fragment f;
        f.module = json::id_field(o, "module", "fragment");
        if (o.contains("nodes"))
            for (const auto& n : json::array_field(o, "nodes", "fragment"))
                f.nodes.push_back(json::decode_node(n));
        if (o.contains("inferences"))
            for (const auto& i : json::array_field(o, "inferences", "fragment"))
                f.inferences.push_back(json::decode_inference(i));
        set.fragments.push_back(std::move(f));
    }
    if (doc.contains("axioms"))
        for (const auto& a : json::array_field(doc, "axioms", "fragment document")) {
            const auto ref = a.is_string() ? parse_node_ref(a.get<std::string>()) : std::nullopt;
            if (!ref) throw SchemaError("axiom entries must be \"module/claim\" strings");
            set.axioms.push_back(*ref);
        }
    return set;
}

AssuranceCase apply_fragments(const AssuranceCase& c, const FragmentSet& set) {
    AssuranceCase out = c;
    for (const auto& f : set.fragments) out = attach_fragment(out, f.module, f.nodes, f.inferences);
    for (const auto& a : set.axioms) out = declare_axiom(out, a);
    return out;
}

} // namespace contractcase
