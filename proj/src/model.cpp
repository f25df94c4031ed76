#include "contractcase/model.hpp"

#include "contractcase/error.hpp"

#include <algorithm>

namespace contractcase {

bool is_identifier(std::string_view token) noexcept {
    if (token.empty()) return false;
    auto head = [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    };
    if (!head(token.front())) return false;
    return std::all_of(token.begin() + 1, token.end(), [&](char c) {
        return head(c) || (c >= '0' && c <= '9');
    });
}

std::string_view to_string(SpecKind kind) noexcept {
    return kind == SpecKind::Assumption ? "assumption" : "guarantee";
}

std::string_view to_string(EdgeKind kind) noexcept {
    return kind == EdgeKind::AssumptionOf ? "assumption-of" : "refinement-of";
}

std::string_view to_string(DependencyKind kind) noexcept {
    switch (kind) {
    case DependencyKind::ParentAssumptionToChildAssumption:
        return "parent-assumption-to-child-assumption";
    case DependencyKind::SiblingGuaranteeToSiblingAssumption:
        return "sibling-guarantee-to-sibling-assumption";
    case DependencyKind::ChildGuaranteeToParentAssumption:
        return "child-guarantee-to-parent-assumption";
    case DependencyKind::Illegal:
        return "illegal";
    }
    return "illegal";
}

const Component* SpecificationStructure::find_component(std::string_view id) const {
    for (const auto& c : components)
        if (c.id == id) return &c;
    return nullptr;
}

const Contract* SpecificationStructure::find_contract(std::string_view id) const {
    for (const auto& k : contracts)
        if (k.id == id) return &k;
    return nullptr;
}

const Refinement* SpecificationStructure::find_refinement(std::string_view id) const {
    for (const auto& r : refinements)
        if (r.id == id) return &r;
    return nullptr;
}

const Specification* SpecificationStructure::find_spec(std::string_view id) const {
    for (const auto& k : contracts) {
        for (const auto& a : k.assumptions)
            if (a.id == id) return &a;
        if (k.guarantee.id == id) return &k.guarantee;
    }
    return nullptr;
}

std::vector<const Contract*>
SpecificationStructure::contracts_of(std::string_view component) const {
    std::vector<const Contract*> out;
    for (const auto& k : contracts)
        if (k.component == component) out.push_back(&k);
    return out;
}

std::vector<Identifier>
SpecificationStructure::children_of(std::string_view component) const {
    std::vector<Identifier> out;
    for (const auto& c : components)
        if (c.parent && *c.parent == component) out.push_back(c.id);
    return out;
}

std::vector<Identifier> SpecificationStructure::roots() const {
    std::vector<Identifier> out;
    for (const auto& c : components)
        if (!c.parent) out.push_back(c.id);
    return out;
}

std::vector<Identifier> SpecificationStructure::preorder() const {
    std::vector<Identifier> order;
    std::set<Identifier> seen;
    // Iterative so that malformed (cyclic) parent relations terminate.
    for (const auto& root : roots()) {
        std::vector<Identifier> stack{root};
        while (!stack.empty()) {
            Identifier id = std::move(stack.back());
            stack.pop_back();
            if (!seen.insert(id).second) continue;
            order.push_back(id);
            auto kids = children_of(id);
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
        }
    }
    for (const auto& c : components)
        if (seen.insert(c.id).second) order.push_back(c.id);
    return order;
}

SpecificationStructure canonicalized(const SpecificationStructure& structure) {
    SpecificationStructure out;
    out.concerns = structure.concerns;
    const auto order = structure.preorder();
    std::map<Identifier, std::size_t> rank;
    for (std::size_t i = 0; i < order.size(); ++i) rank.emplace(order[i], i);
    for (const auto& id : order) out.components.push_back(*structure.find_component(id));

    out.contracts = structure.contracts;
    auto rank_of = [&](const Identifier& c) {
        auto it = rank.find(c);
        return it == rank.end() ? order.size() : it->second;
    };
    std::stable_sort(out.contracts.begin(), out.contracts.end(),
                     [&](const Contract& a, const Contract& b) {
                         return std::pair(rank_of(a.component), std::string_view(a.id)) <
                                std::pair(rank_of(b.component), std::string_view(b.id));
                     });
    out.refinements = structure.refinements;
    std::stable_sort(out.refinements.begin(), out.refinements.end(),
                     [](const Refinement& a, const Refinement& b) { return a.id < b.id; });
    return out;
}

bool structurally_equal(const SpecificationStructure& a, const SpecificationStructure& b) {
    return canonicalized(a) == canonicalized(b);
}

std::size_t SpecGraph::count(EdgeKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        edges.begin(), edges.end(), [&](const SpecEdge& e) { return e.kind == kind; }));
}

std::vector<const SpecEdge*> SpecGraph::incoming(std::string_view node) const {
    std::vector<const SpecEdge*> out;
    for (const auto& e : edges)
        if (e.to == node) out.push_back(&e);
    return out;
}

SpecGraph build_graph(const SpecificationStructure& structure) {
    SpecGraph graph;
    for (const auto& k : structure.contracts) {
        if (!structure.find_component(k.component))
            throw ReferenceError(k.component, "component of contract " + k.id);
        graph.nodes.insert(k.guarantee.id);
        for (const auto& a : k.assumptions) {
            graph.nodes.insert(a.id);
            graph.edges.push_back({a.id, k.guarantee.id, EdgeKind::AssumptionOf, k.id});
        }
    }
    for (const auto& r : structure.refinements) {
        if (!graph.nodes.count(r.source))
            throw ReferenceError(r.source, "source of refinement " + r.id);
        if (!graph.nodes.count(r.target))
            throw ReferenceError(r.target, "target of refinement " + r.id);
        graph.edges.push_back({r.source, r.target, EdgeKind::RefinementOf, r.id});
    }
    return graph;
}

Owner owner_of(const SpecificationStructure& structure, std::string_view spec) {
    std::vector<const Contract*> owners;
    for (const auto& k : structure.contracts) {
        bool here = k.guarantee.id == spec;
        for (const auto& a : k.assumptions) here = here || a.id == spec;
        if (here) owners.push_back(&k);
    }
    if (owners.empty())
        throw ReferenceError(std::string(spec), "owner lookup",
                             "unknown specification '" + std::string(spec) + "'");
    if (owners.size() > 1)
        throw ReferenceError(std::string(spec), "owner lookup",
                             "specification '" + std::string(spec) +
                                 "' is declared by " + std::to_string(owners.size()) +
                                 " contracts");
    return {owners.front()->id, owners.front()->component};
}

DependencyKind dependency_kind(const SpecificationStructure& structure,
                               const Refinement& refinement) {
    const auto src = owner_of(structure, refinement.source);
    const auto dst = owner_of(structure, refinement.target);
    const auto* src_spec = structure.find_spec(refinement.source);
    const auto* dst_spec = structure.find_spec(refinement.target);
    const auto* src_comp = structure.find_component(src.component);
    const auto* dst_comp = structure.find_component(dst.component);
    if (!src_comp) throw ReferenceError(src.component, "owner of " + refinement.source);
    if (!dst_comp) throw ReferenceError(dst.component, "owner of " + refinement.target);

    if (dst_spec->kind != SpecKind::Assumption) return DependencyKind::Illegal;

    if (src_spec->kind == SpecKind::Assumption) {
        if (dst_comp->parent && *dst_comp->parent == src_comp->id)
            return DependencyKind::ParentAssumptionToChildAssumption;
        return DependencyKind::Illegal;
    }
    if (src_comp->id != dst_comp->id && src_comp->parent && dst_comp->parent &&
        *src_comp->parent == *dst_comp->parent)
        return DependencyKind::SiblingGuaranteeToSiblingAssumption;
    if (src_comp->parent && *src_comp->parent == dst_comp->id)
        return DependencyKind::ChildGuaranteeToParentAssumption;
    return DependencyKind::Illegal;
}

} // namespace contractcase
