#pragma once

// Core contract-based-design model: components, assume-guarantee contracts,
// refinements between specifications, and the derived specification graph.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace contractcase {

// Token matching [A-Za-z_][A-Za-z0-9_]*. Case-sensitive.
using Identifier = std::string;

bool is_identifier(std::string_view token) noexcept;

enum class SpecKind { Assumption, Guarantee };

std::string_view to_string(SpecKind kind) noexcept;

struct Specification {
    Identifier id;
    SpecKind kind = SpecKind::Assumption;
    std::string text;

    bool operator==(const Specification&) const = default;
};

// An assume-guarantee pair allocated to one component. Multiple guarantees on
// a component are expressed as multiple contracts.
struct Contract {
    Identifier id;
    Identifier component;
    std::vector<Specification> assumptions;
    Specification guarantee{{}, SpecKind::Guarantee, {}};

    bool operator==(const Contract&) const = default;
};

struct Component {
    Identifier id;
    std::optional<Identifier> parent;
    std::string name;
    std::string description;

    bool operator==(const Component&) const = default;
};

// "source -> target": satisfaction of source discharges target.
struct Refinement {
    Identifier id;
    Identifier source;
    Identifier target;

    bool operator==(const Refinement&) const = default;
};

struct SpecificationStructure {
    std::vector<Component> components;
    std::vector<Contract> contracts;
    std::vector<Refinement> refinements;
    // concern name -> guarantee ids
    std::map<std::string, std::set<Identifier>> concerns;

    bool operator==(const SpecificationStructure&) const = default;

    const Component* find_component(std::string_view id) const;
    const Contract* find_contract(std::string_view id) const;
    const Refinement* find_refinement(std::string_view id) const;
    // First declaration of a specification with this id, if any.
    const Specification* find_spec(std::string_view id) const;

    std::vector<const Contract*> contracts_of(std::string_view component) const;
    std::vector<Identifier> children_of(std::string_view component) const;
    // Root components, in declaration order.
    std::vector<Identifier> roots() const;
    // Components in preorder of the parent tree, children in declaration
    // order. Components not reachable from a root are appended in
    // declaration order.
    std::vector<Identifier> preorder() const;
};

// Components in preorder, contracts by (component preorder, id), refinements
// by id. Assumption order inside a contract is kept.
SpecificationStructure canonicalized(const SpecificationStructure& structure);

// Equality up to declaration order of contracts and refinements, and of
// components except the relative order of siblings.
bool structurally_equal(const SpecificationStructure& a, const SpecificationStructure& b);

enum class EdgeKind { AssumptionOf, RefinementOf };

std::string_view to_string(EdgeKind kind) noexcept;

struct SpecEdge {
    Identifier from;
    Identifier to;
    EdgeKind kind = EdgeKind::AssumptionOf;
    // Refinement id for RefinementOf edges, contract id for AssumptionOf.
    Identifier via;

    bool operator==(const SpecEdge&) const = default;
    auto operator<=>(const SpecEdge&) const = default;
};

struct SpecGraph {
    std::set<Identifier> nodes;
    // AssumptionOf edges in contract declaration order, then RefinementOf
    // edges in refinement declaration order.
    std::vector<SpecEdge> edges;

    std::size_t count(EdgeKind kind) const;
    std::vector<const SpecEdge*> incoming(std::string_view node) const;
};

// Throws ReferenceError when a contract owner or refinement endpoint does not
// resolve.
SpecGraph build_graph(const SpecificationStructure& structure);

struct Owner {
    Identifier contract;
    Identifier component;

    bool operator==(const Owner&) const = default;
};

// Throws ReferenceError for unknown ids and for ids declared by more than one
// contract.
Owner owner_of(const SpecificationStructure& structure, std::string_view spec);

enum class DependencyKind {
    ParentAssumptionToChildAssumption,
    SiblingGuaranteeToSiblingAssumption,
    ChildGuaranteeToParentAssumption,
    Illegal,
};

std::string_view to_string(DependencyKind kind) noexcept;

DependencyKind dependency_kind(const SpecificationStructure& structure,
                               const Refinement& refinement);

// Lowercase hex SHA-256 over a canonical, length-prefixed serialization of the
// element and every specification text it references.
std::string content_hash(const Specification& spec);
std::string content_hash(const Contract& contract);
std::string content_hash(const SpecificationStructure& structure,
                         const Refinement& refinement);
// Covers the component's own fields and the hashes of its allocated contracts.
std::string content_hash(const SpecificationStructure& structure,
                         const Component& component);

// Lowercase hex SHA-256 over the length-prefixed fields.
std::string combined_hash(const std::vector<std::string>& fields);

} // namespace contractcase
