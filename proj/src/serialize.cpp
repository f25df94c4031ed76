#include "contractcase/dsl.hpp"
#include "contractcase/error.hpp"

namespace contractcase {
namespace {

std::string quoted(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

void check_resolves(const SpecificationStructure& s) {
    for (const auto& c : s.components)
        if (c.parent && !s.find_component(*c.parent))
            throw ReferenceError(*c.parent, "parent of component " + c.id);
    for (const auto& k : s.contracts)
        if (!s.find_component(k.component))
            throw ReferenceError(k.component, "component of contract " + k.id);
    for (const auto& r : s.refinements) {
        if (!s.find_spec(r.source)) throw ReferenceError(r.source, "source of refinement " + r.id);
        if (!s.find_spec(r.target)) throw ReferenceError(r.target, "target of refinement " + r.id);
    }
    for (const auto& [name, covers] : s.concerns)
        for (const auto& g : covers)
            if (!s.find_spec(g)) throw ReferenceError(g, "concern " + name);
}

} // namespace

std::string serialize(const SpecificationStructure& structure) {
    check_resolves(structure);
    const auto s = canonicalized(structure);
    std::string out;

    for (const auto& c : s.components) {
        out += "component " + c.id;
        if (c.parent) out += " within " + *c.parent;
        out += ";\n";
    }

    for (const auto& k : s.contracts) {
        if (!out.empty()) out += '\n';
        out += "contract " + k.id + " for " + k.component + " {\n";
        for (const auto& a : k.assumptions) out += "  assume " + a.id + ": " + quoted(a.text) + ";\n";
        out += "  guarantee " + k.guarantee.id + ": " + quoted(k.guarantee.text) + ";\n";
        out += "}\n";
    }

    if (!s.refinements.empty() && !out.empty()) out += '\n';
    for (const auto& r : s.refinements)
        out += "refine " + r.id + ": " + r.source + " -> " + r.target + ";\n";

    if (!s.concerns.empty() && !out.empty()) out += '\n';
    for (const auto& [name, covers] : s.concerns) {
        out += "concern " + name + " covers ";
        bool first = true;
        for (const auto& g : covers) {
            if (!first) out += ", ";
            out += g;
            first = false;
        }
        out += ";\n";
    }
    return out;
}

} // namespace contractcase
