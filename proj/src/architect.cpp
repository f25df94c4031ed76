#include "contractcase/architect.hpp"

#include <algorithm>

namespace contractcase {

std::string to_string(const NodeRef& ref) { return ref.module + "/" + ref.node; }

std::optional<NodeRef> parse_node_ref(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return std::nullopt;
    NodeRef ref{std::string(text.substr(0, slash)), std::string(text.substr(slash + 1))};
    if (!is_identifier(ref.module) || !is_identifier(ref.node)) return std::nullopt;
    return ref;
}

std::string component_module_id(std::string_view component) {
    return "M_" + std::string(component);
}

std::string refinement_module_id(std::string_view refinement) {
    return "R_" + std::string(refinement);
}

const ComponentModule*
AssuranceArchitecture::find_component_module(std::string_view id) const {
    for (const auto& m : component_modules)
        if (m.id == id) return &m;
    return nullptr;
}

const RefinementModule*
AssuranceArchitecture::find_refinement_module(std::string_view id) const {
    for (const auto& m : refinement_modules)
        if (m.id == id) return &m;
    return nullptr;
}

bool AssuranceArchitecture::has_module(std::string_view id) const {
    return find_component_module(id) || find_refinement_module(id);
}

std::vector<Identifier> AssuranceArchitecture::module_ids() const {
    std::vector<Identifier> ids;
    for (const auto& m : component_modules) ids.push_back(m.id);
    for (const auto& m : refinement_modules) ids.push_back(m.id);
    return ids;
}

const ComponentModule*
AssuranceArchitecture::root_module(const SpecificationStructure& structure) const {
    const auto roots = structure.roots();
    if (roots.size() != 1) return nullptr;
    return find_component_module(component_module_id(roots.front()));
}

namespace {

std::string summarize(const std::vector<Diagnostic>& blocking) {
    std::string msg = "architecture derivation refused:";
    for (const auto& d : blocking) msg += "\n  " + format(d);
    return msg;
}

} // namespace

ArchitectureError::ArchitectureError(std::vector<Diagnostic> blocking)
    : Error(summarize(blocking)), blocking_(std::move(blocking)) {}

AssuranceArchitecture derive_architecture(const SpecificationStructure& structure,
                                          ValidationMode mode) {
    auto diagnostics = validate(structure, mode);
    std::vector<Diagnostic> blocking;
    std::copy_if(diagnostics.begin(), diagnostics.end(), std::back_inserter(blocking),
                 [](const Diagnostic& d) { return d.severity == Severity::Error; });
    if (!blocking.empty()) throw ArchitectureError(std::move(blocking));

    AssuranceArchitecture arch;
    for (const auto& comp : structure.preorder()) {
        auto contracts = structure.contracts_of(comp);
        if (contracts.empty()) continue;
        std::sort(contracts.begin(), contracts.end(),
                  [](const Contract* a, const Contract* b) { return a->id < b->id; });
        ComponentModule m;
        m.id = component_module_id(comp);
        m.component = comp;
        for (const auto* k : contracts) {
            m.contracts.push_back(k->id);
            for (const auto& a : k->assumptions) m.interface_premises.push_back(a.id);
            m.interface_conclusions.push_back(k->guarantee.id);
        }
        arch.component_modules.push_back(std::move(m));
    }

    auto refinements = structure.refinements;
    std::sort(refinements.begin(), refinements.end(),
              [](const Refinement& a, const Refinement& b) { return a.id < b.id; });
    for (const auto& r : refinements) {
        RefinementModule m{refinement_module_id(r.id), r.id, r.source, r.target};
        const auto src = owner_of(structure, r.source);
        const auto dst = owner_of(structure, r.target);
        // Assumption sources bind from the owner's premise claim, guarantee
        // sources from its conclusion claim; both are named by specification id.
        arch.bindings.push_back({component_module_id(src.component), r.source, m.id, r.source});
        arch.bindings.push_back({m.id, r.target, component_module_id(dst.component), r.target});
        arch.refinement_modules.push_back(std::move(m));
    }
    return arch;
}

std::string_view to_string(NodeKind kind) noexcept {
    switch (kind) {
    case NodeKind::Claim: return "claim";
    case NodeKind::Strategy: return "strategy";
    case NodeKind::Justification: return "justification";
    case NodeKind::Context: return "context";
    case NodeKind::Evidence: return "evidence";
    }
    return "claim";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) noexcept {
    for (auto k : {NodeKind::Claim, NodeKind::Strategy, NodeKind::Justification,
                   NodeKind::Context, NodeKind::Evidence})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

std::string_view to_string(Scope scope) noexcept {
    switch (scope) {
    case Scope::InterfacePremise: return "interface-premise";
    case Scope::Internal: return "internal";
    case Scope::InterfaceConclusion: return "interface-conclusion";
    }
    return "internal";
}

namespace {

ArgumentNode claim(const Identifier& module, const Specification& spec) {
    return {spec.id, NodeKind::Claim, spec.text, module, true, {}, false, std::nullopt};
}

ArgumentNode placeholder(const Identifier& module, Identifier id, NodeKind kind) {
    return {std::move(id), kind, std::string(kPlaceholderText), module, false, {}, false,
            std::nullopt};
}

void require_member(bool member, const Identifier& id) {
    if (!member) throw Error("module " + id + " does not belong to the architecture");
}

} // namespace

ArgumentTemplate instantiate_component_template(const AssuranceArchitecture& architecture,
                                                const ComponentModule& module,
                                                const SpecificationStructure& structure) {
    const auto* known = architecture.find_component_module(module.id);
    require_member(known && *known == module, module.id);
    const auto* comp = structure.find_component(module.component);
    if (!comp) throw ReferenceError(module.component, "component module " + module.id);

    ArgumentTemplate t;
    t.module = module.id;
    for (const auto& kid : module.contracts) {
        const auto* k = structure.find_contract(kid);
        if (!k) throw ReferenceError(kid, "component module " + module.id);
        Inference inf;
        for (const auto& a : k->assumptions) {
            t.nodes.push_back(claim(module.id, a));
            t.scope[a.id] = Scope::InterfacePremise;
            inf.premises.push_back(a.id);
        }
        const auto& g = k->guarantee;
        t.nodes.push_back(claim(module.id, g));
        t.scope[g.id] = Scope::InterfaceConclusion;

        inf.strategy = "S_" + g.id;
        inf.conclusion = g.id;
        inf.justification = "J_" + g.id;
        inf.contexts = {"X_" + g.id};
        t.nodes.push_back(placeholder(module.id, inf.strategy, NodeKind::Strategy));
        t.nodes.push_back(placeholder(module.id, *inf.justification, NodeKind::Justification));
        ArgumentNode context{inf.contexts.front(), NodeKind::Context,
                             "Component " + comp->id +
                                 (comp->description.empty() ? "" : ": " + comp->description),
                             module.id, true, {}, false, std::nullopt};
        t.nodes.push_back(std::move(context));
        for (const auto& id : {inf.strategy, *inf.justification, inf.contexts.front()})
            t.scope[id] = Scope::Internal;
        t.inferences.push_back(std::move(inf));
    }
    return t;
}

ArgumentTemplate instantiate_refinement_template(const AssuranceArchitecture& architecture,
                                                 const RefinementModule& module,
                                                 const SpecificationStructure& structure) {
    const auto* known = architecture.find_refinement_module(module.id);
    require_member(known && *known == module, module.id);
    const auto* src = structure.find_spec(module.premise_spec);
    const auto* dst = structure.find_spec(module.conclusion_spec);
    if (!src) throw ReferenceError(module.premise_spec, "refinement module " + module.id);
    if (!dst) throw ReferenceError(module.conclusion_spec, "refinement module " + module.id);

    ArgumentTemplate t;
    t.module = module.id;
    t.nodes.push_back(claim(module.id, *src));
    t.nodes.push_back(claim(module.id, *dst));
    Inference inf{"S_" + module.refinement, {src->id}, dst->id, "J_" + module.refinement, {}};
    t.nodes.push_back(placeholder(module.id, inf.strategy, NodeKind::Strategy));
    t.nodes.push_back(placeholder(module.id, *inf.justification, NodeKind::Justification));
    t.scope[src->id] = Scope::InterfacePremise;
    t.scope[dst->id] = Scope::InterfaceConclusion;
    t.scope[inf.strategy] = Scope::Internal;
    t.scope[*inf.justification] = Scope::Internal;
    t.inferences.push_back(std::move(inf));
    return t;
}

std::vector<ArgumentTemplate> instantiate_all(const AssuranceArchitecture& architecture,
                                              const SpecificationStructure& structure) {
    std::vector<ArgumentTemplate> out;
    for (const auto& m : architecture.component_modules)
        out.push_back(instantiate_component_template(architecture, m, structure));
    for (const auto& m : architecture.refinement_modules)
        out.push_back(instantiate_refinement_template(architecture, m, structure));
    return out;
}

} // namespace contractcase
