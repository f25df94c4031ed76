#pragma once

// JSON documents for architectures, templates and whole assurance cases. All
// documents carry "schema_version": "1" and a "document" kind.

#include "contractcase/argument.hpp"
#include "contractcase/json_codec.hpp"

#include <string>
#include <string_view>

namespace contractcase {

namespace json {

Value encode(const AssuranceArchitecture& architecture);
AssuranceArchitecture decode_architecture(const Value& value);

Value encode(const ArgumentNode& node);
ArgumentNode decode_node(const Value& value);

Value encode(const Inference& inference);
Inference decode_inference(const Value& value);

Value encode(const NodeRef& ref);
NodeRef decode_ref(const Value& value);

Value encode_case(const AssuranceCase& c);
AssuranceCase decode_case(const Value& value);

} // namespace json

std::string architecture_to_json(const AssuranceArchitecture& architecture);
std::string template_to_json(const ArgumentTemplate& tmpl);

std::string case_to_json(const AssuranceCase& c);
AssuranceCase case_from_json(std::string_view text);

// Argument content for several modules plus axiom declarations, applied in
// order. Axioms are written as "module/claim" strings.
struct Fragment {
    Identifier module;
    std::vector<ArgumentNode> nodes;
    std::vector<Inference> inferences;

    bool operator==(const Fragment&) const = default;
};

struct FragmentSet {
    std::vector<Fragment> fragments;
    std::vector<NodeRef> axioms;

    bool operator==(const FragmentSet&) const = default;
};

std::string fragments_to_json(const FragmentSet& set);
FragmentSet fragments_from_json(std::string_view text);
AssuranceCase apply_fragments(const AssuranceCase& c, const FragmentSet& set);

} // namespace contractcase
