#pragma once

// Field-invariant translation of a specification structure into an assurance
// module architecture and per-module argument templates.
//
// Every component with at least one contract gets a component module "M_<id>";
// every refinement gets a refinement module "R_<id>". Claims inside a module
// are named after the specification they state, so a claim is addressed by
// (module, specification id).

#include "contractcase/error.hpp"
#include "contractcase/model.hpp"
#include "contractcase/validator.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contractcase {

struct NodeRef {
    Identifier module;
    Identifier node;

    bool operator==(const NodeRef&) const = default;
    auto operator<=>(const NodeRef&) const = default;
};

// "M_Csys/G1"
std::string to_string(const NodeRef& ref);
std::optional<NodeRef> parse_node_ref(std::string_view text);

struct ComponentModule {
    Identifier id;
    Identifier component;
    std::vector<Identifier> contracts;
    std::vector<Identifier> interface_premises;    // assumption ids
    std::vector<Identifier> interface_conclusions; // guarantee ids

    bool operator==(const ComponentModule&) const = default;
};

struct RefinementModule {
    Identifier id;
    Identifier refinement;
    Identifier premise_spec;
    Identifier conclusion_spec;

    bool operator==(const RefinementModule&) const = default;
};

// Reads in the direction of reasoning: the "from" claim supports the "to"
// premise claim.
struct Binding {
    Identifier from_module;
    Identifier from_claim;
    Identifier to_module;
    Identifier to_claim;

    NodeRef from() const { return {from_module, from_claim}; }
    NodeRef to() const { return {to_module, to_claim}; }

    bool operator==(const Binding&) const = default;
};

struct AssuranceArchitecture {
    std::vector<ComponentModule> component_modules; // component preorder
    std::vector<RefinementModule> refinement_modules; // by refinement id
    std::vector<Binding> bindings;                   // by refinement id

    bool operator==(const AssuranceArchitecture&) const = default;

    const ComponentModule* find_component_module(std::string_view id) const;
    const RefinementModule* find_refinement_module(std::string_view id) const;
    bool has_module(std::string_view id) const;
    std::vector<Identifier> module_ids() const;
    // Module of the root component, if it has contracts.
    const ComponentModule* root_module(const SpecificationStructure& structure) const;
};

std::string component_module_id(std::string_view component);
std::string refinement_module_id(std::string_view refinement);

// Thrown when the structure does not meet the derivation precondition; carries
// the blocking diagnostics.
class ArchitectureError : public Error {
public:
    explicit ArchitectureError(std::vector<Diagnostic> blocking);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return blocking_; }

private:
    std::vector<Diagnostic> blocking_;
};

AssuranceArchitecture derive_architecture(const SpecificationStructure& structure,
                                          ValidationMode mode = ValidationMode::Lenient);

enum class NodeKind { Claim, Strategy, Justification, Context, Evidence };

std::string_view to_string(NodeKind kind) noexcept;
std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept;

inline constexpr std::string_view kPlaceholderText = "to be developed";

struct ArgumentNode {
    Identifier id;
    NodeKind kind = NodeKind::Claim;
    std::string text;
    Identifier module;
    bool developed = true;
    // Evidence only.
    std::string artifact;
    bool trusted = false;
    std::optional<Identifier> supports; // claim backed by this evidence

    bool operator==(const ArgumentNode&) const = default;
};

struct Inference {
    Identifier strategy;
    std::vector<Identifier> premises;
    Identifier conclusion;
    std::optional<Identifier> justification;
    std::vector<Identifier> contexts;

    bool operator==(const Inference&) const = default;
};

enum class Scope { InterfacePremise, Internal, InterfaceConclusion };

std::string_view to_string(Scope scope) noexcept;

struct ArgumentTemplate {
    Identifier module;
    std::vector<ArgumentNode> nodes;
    std::vector<Inference> inferences;
    // Claims above or below the scope lines; strategy, justification and
    // context nodes are Internal.
    std::map<Identifier, Scope> scope;

    bool operator==(const ArgumentTemplate&) const = default;
};

// One template instance per allocated contract: premise claims for the
// assumptions, a conclusion claim for the guarantee, placeholder strategy
// "S_<G>" and justification "J_<G>", and context "X_<G>".
ArgumentTemplate instantiate_component_template(const AssuranceArchitecture& architecture,
                                                const ComponentModule& module,
                                                const SpecificationStructure& structure);

// Premise claim (source), conclusion claim (target), strategy "S_<r>" and
// justification "J_<r>".
ArgumentTemplate instantiate_refinement_template(const AssuranceArchitecture& architecture,
                                                 const RefinementModule& module,
                                                 const SpecificationStructure& structure);

// Templates for every module, component modules first.
std::vector<ArgumentTemplate> instantiate_all(const AssuranceArchitecture& architecture,
                                              const SpecificationStructure& structure);

} // namespace contractcase
