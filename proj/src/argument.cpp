#include "contractcase/argument.hpp"

#include "contractcase/error.hpp"

#include <algorithm>
#include <deque>

namespace contractcase {

std::string_view to_string(ClaimStatus status) noexcept {
    switch (status) {
    case ClaimStatus::Unsupported: return "Unsupported";
    case ClaimStatus::Undefined: return "Undefined";
    case ClaimStatus::Assumed: return "Assumed";
    case ClaimStatus::Supported: return "Supported";
    }
    return "Unsupported";
}

AssuranceCase AssuranceCase::from_structure(const SpecificationStructure& structure,
                                            ValidationMode mode) {
    AssuranceCase c;
    c.structure_ = structure;
    c.architecture_ = derive_architecture(structure, mode);
    for (auto& t : instantiate_all(c.architecture_, structure)) {
        for (auto& n : t.nodes) {
            NodeRef ref{t.module, n.id};
            c.nodes_.emplace(ref, std::move(n));
        }
        for (auto& inf : t.inferences) {
            ModuleInference mi{t.module, std::move(inf)};
            c.inferences_.emplace(mi.key(), std::move(mi));
        }
        for (const auto& [id, scope] : t.scope)
            if (scope != Scope::Internal) c.scope_.emplace(NodeRef{t.module, id}, scope);
    }
    return c;
}

AssuranceCase AssuranceCase::assemble(SpecificationStructure structure,
                                      AssuranceArchitecture architecture,
                                      std::vector<ArgumentNode> nodes,
                                      std::vector<ModuleInference> inferences,
                                      std::set<NodeRef> axioms) {
    auto c = from_structure(structure, ValidationMode::Lenient);
    if (!(c.architecture_ == architecture))
        throw CaseError("stored architecture does not match the one derived from the structure");
    c.nodes_.clear();
    for (auto& n : nodes) {
        NodeRef ref{n.module, n.id};
        if (!c.nodes_.emplace(ref, std::move(n)).second)
            throw CaseError("duplicate node " + to_string(ref));
    }
    c.inferences_.clear();
    for (auto& mi : inferences) {
        const auto key = mi.key();
        if (!c.inferences_.emplace(key, std::move(mi)).second)
            throw CaseError("strategy " + to_string(key) + " is used by more than one inference");
    }
    c.axioms_ = std::move(axioms);
    c.check_invariants();
    return c;
}

const ArgumentNode* AssuranceCase::find(const NodeRef& ref) const {
    auto it = nodes_.find(ref);
    return it == nodes_.end() ? nullptr : &it->second;
}

std::vector<const ArgumentNode*> AssuranceCase::module_nodes(std::string_view module) const {
    std::vector<const ArgumentNode*> out;
    for (const auto& [ref, n] : nodes_)
        if (ref.module == module) out.push_back(&n);
    return out;
}

Scope AssuranceCase::scope_of(const NodeRef& ref) const {
    auto it = scope_.find(ref);
    return it == scope_.end() ? Scope::Internal : it->second;
}

const ModuleInference* AssuranceCase::concluding(const NodeRef& claim) const {
    for (const auto& [key, mi] : inferences_)
        if (mi.module == claim.module && mi.inference.conclusion == claim.node) return &mi;
    return nullptr;
}

const Binding* AssuranceCase::binding_into(const NodeRef& claim) const {
    for (const auto& b : architecture_.bindings)
        if (b.to() == claim) return &b;
    return nullptr;
}

std::vector<const ArgumentNode*> AssuranceCase::evidence_for(const NodeRef& claim) const {
    std::vector<const ArgumentNode*> out;
    for (const auto& [ref, n] : nodes_)
        if (ref.module == claim.module && n.kind == NodeKind::Evidence && n.supports &&
            *n.supports == claim.node)
            out.push_back(&n);
    return out;
}

namespace {

// Kahn's algorithm; ties broken by NodeRef order. Returns fewer nodes than the
// input when there is a cycle.
std::vector<NodeRef> topological(const std::set<NodeRef>& nodes,
                                 const std::vector<std::pair<NodeRef, NodeRef>>& edges) {
    std::map<NodeRef, int> indegree;
    std::map<NodeRef, std::vector<NodeRef>> out;
    for (const auto& n : nodes) indegree[n];
    for (const auto& [from, to] : edges) {
        ++indegree[to];
        out[from].push_back(to);
    }
    std::set<NodeRef> ready;
    for (const auto& [n, d] : indegree)
        if (d == 0) ready.insert(n);
    std::vector<NodeRef> order;
    while (!ready.empty()) {
        auto n = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(n);
        for (const auto& m : out[n])
            if (--indegree[m] == 0) ready.insert(m);
    }
    return order;
}

std::set<NodeRef> claims_of(const AssuranceCase& c) {
    std::set<NodeRef> out;
    for (const auto& [ref, n] : c.nodes())
        if (n.kind == NodeKind::Claim) out.insert(ref);
    return out;
}

} // namespace

void AssuranceCase::check_invariants() const {
    for (const auto& [ref, n] : nodes_) {
        if (!architecture_.has_module(ref.module))
            throw CaseError("node " + to_string(ref) + " belongs to unknown module " + ref.module);
        if (!is_identifier(n.id)) throw CaseError("invalid node id '" + n.id + "'");
        if (n.kind == NodeKind::Evidence) {
            if (n.supports) {
                const auto* target = find({ref.module, *n.supports});
                if (!target || target->kind != NodeKind::Claim)
                    throw CaseError("evidence " + to_string(ref) + " supports " + *n.supports +
                                    ", which is not a claim in module " + ref.module);
            }
        } else if (n.supports) {
            throw CaseError("only evidence nodes may support a claim (" + to_string(ref) + ")");
        }
    }
    for (const auto& [ref, scope] : scope_) {
        const auto* n = find(ref);
        if (!n || n->kind != NodeKind::Claim)
            throw CaseError("interface claim " + to_string(ref) + " is missing");
    }

    auto expect_kind = [&](const Identifier& module, const Identifier& id, NodeKind kind,
                           const std::string& role) {
        const auto* n = find({module, id});
        if (!n)
            throw CaseError(role + " " + id + " does not exist in module " + module);
        if (n->kind != kind)
            throw CaseError(role + " " + module + "/" + id + " must be a " +
                            std::string(to_string(kind)) + ", found " +
                            std::string(to_string(n->kind)));
    };
    std::set<NodeRef> concluded;
    for (const auto& [key, mi] : inferences_) {
        const auto& inf = mi.inference;
        expect_kind(mi.module, inf.strategy, NodeKind::Strategy, "strategy");
        expect_kind(mi.module, inf.conclusion, NodeKind::Claim, "conclusion");
        for (const auto& p : inf.premises) expect_kind(mi.module, p, NodeKind::Claim, "premise");
        if (inf.justification)
            expect_kind(mi.module, *inf.justification, NodeKind::Justification, "justification");
        for (const auto& x : inf.contexts) expect_kind(mi.module, x, NodeKind::Context, "context");
        if (std::find(inf.premises.begin(), inf.premises.end(), inf.conclusion) != inf.premises.end())
            throw CaseError("inference " + to_string(key) + " uses its conclusion as a premise");
        const NodeRef conclusion{mi.module, inf.conclusion};
        if (scope_of(conclusion) == Scope::InterfacePremise)
            throw CaseError("interface premise " + to_string(conclusion) +
                            " cannot be the conclusion of an inference");
        if (!concluded.insert(conclusion).second)
            throw CaseError("claim " + to_string(conclusion) +
                            " is the conclusion of more than one inference");
    }

    const auto claims = claims_of(*this);
    if (topological(claims, claim_dependencies(*this)).size() != claims.size())
        throw CaseError("argument contains a cycle");

    for (const auto& a : axioms_) check_axiom(a);
}

void AssuranceCase::check_axiom(const NodeRef& claim) const {
    const auto* n = find(claim);
    if (!n || n->kind != NodeKind::Claim)
        throw CaseError("axiom " + to_string(claim) + " is not a claim of the case");
    if (scope_of(claim) != Scope::InterfacePremise)
        throw CaseError("axiom " + to_string(claim) + " is not an interface premise claim");
    const auto* root = architecture_.root_module(structure_);
    if (!root || root->id != claim.module)
        throw CaseError("axiom " + to_string(claim) +
                        " is not a premise of the root component module");
    if (const auto* b = binding_into(claim))
        throw CaseError("axiom " + to_string(claim) + " is discharged through " + b->from_module +
                        "; it must be argued in its refinement module");
}

AssuranceCase attach_fragment(const AssuranceCase& c, const Identifier& module,
                              std::vector<ArgumentNode> nodes, std::vector<Inference> inferences) {
    if (!c.architecture_.has_module(module)) throw CaseError("unknown module " + module);
    AssuranceCase next = c;

    for (auto& n : nodes) {
        if (n.module.empty()) n.module = module;
        if (n.module != module)
            throw CaseError("node " + n.id + " belongs to module " + n.module +
                            ", not " + module + "; fragments stay within one module");
        NodeRef ref{module, n.id};
        auto it = next.nodes_.find(ref);
        if (it != next.nodes_.end()) {
            if (it->second.developed || it->second.kind != n.kind)
                throw CaseError("node " + to_string(ref) + " already exists");
            it->second = std::move(n);
        } else {
            next.nodes_.emplace(ref, std::move(n));
        }
    }

    auto check_local = [&](const Identifier& id, const std::string& role) {
        if (next.find({module, id})) return;
        for (const auto& [ref, n] : next.nodes_)
            if (ref.node == id)
                throw CaseError(role + " " + id + " lives in module " + ref.module +
                                "; cross-module links are bindings only");
        throw CaseError(role + " " + id + " does not exist in module " + module);
    };

    for (auto& inf : inferences) {
        check_local(inf.strategy, "strategy");
        check_local(inf.conclusion, "conclusion");
        for (const auto& p : inf.premises) check_local(p, "premise");
        if (inf.justification) check_local(*inf.justification, "justification");
        for (const auto& x : inf.contexts) check_local(x, "context");

        ModuleInference mi{module, std::move(inf)};
        const auto key = mi.key();
        const NodeRef conclusion{module, mi.inference.conclusion};
        auto existing = next.inferences_.find(key);
        if (existing != next.inferences_.end()) {
            const auto& old = existing->second.inference;
            if (old.conclusion != mi.inference.conclusion)
                throw CaseError("inference " + to_string(key) + " must keep conclusion " +
                                old.conclusion);
            for (const auto& p : old.premises)
                if (c.scope_of({module, p}) == Scope::InterfacePremise &&
                    std::find(mi.inference.premises.begin(), mi.inference.premises.end(), p) ==
                        mi.inference.premises.end())
                    throw CaseError("inference " + to_string(key) +
                                    " must keep interface premise " + p);
            existing->second = std::move(mi);
            continue;
        }
        if (const auto* other = next.concluding(conclusion))
            throw CaseError("claim " + to_string(conclusion) + " is already concluded by " +
                            to_string(other->key()));
        next.inferences_.emplace(key, std::move(mi));
    }

    next.check_invariants();
    return next;
}

AssuranceCase declare_axiom(const AssuranceCase& c, const NodeRef& claim) {
    c.check_axiom(claim);
    AssuranceCase next = c;
    next.axioms_.insert(claim);
    return next;
}

AssuranceCase remove_node(const AssuranceCase& c, const NodeRef& node) {
    const auto* n = c.find(node);
    if (!n) throw CaseError("unknown node " + to_string(node));
    if (n->kind != NodeKind::Evidence && n->kind != NodeKind::Justification &&
        n->kind != NodeKind::Context)
        throw CaseError("only evidence, justification and context nodes can be removed (" +
                        to_string(node) + " is a " + std::string(to_string(n->kind)) + ")");
    AssuranceCase next = c;
    next.nodes_.erase(node);
    for (auto& [key, mi] : next.inferences_) {
        if (mi.module != node.module) continue;
        auto& inf = mi.inference;
        if (inf.justification && *inf.justification == node.node) inf.justification.reset();
        std::erase(inf.contexts, node.node);
    }
    return next;
}

std::vector<std::pair<NodeRef, NodeRef>> claim_dependencies(const AssuranceCase& c) {
    std::vector<std::pair<NodeRef, NodeRef>> deps;
    for (const auto& [key, mi] : c.inferences())
        for (const auto& p : mi.inference.premises)
            deps.emplace_back(NodeRef{mi.module, p}, NodeRef{mi.module, mi.inference.conclusion});
    for (const auto& b : c.bindings()) deps.emplace_back(b.from(), b.to());
    return deps;
}

StatusMap evaluate_status(const AssuranceCase& c) {
    const auto claims = claims_of(c);
    const auto order = topological(claims, claim_dependencies(c));
    if (order.size() != claims.size()) throw CaseError("argument contains a cycle");
    return evaluate_status(c, order);
}

StatusMap evaluate_status(const AssuranceCase& c, std::span<const NodeRef> order) {
    StatusMap status;
    auto get = [&](const NodeRef& ref, const NodeRef& dependent) {
        auto it = status.find(ref);
        if (it == status.end())
            throw CaseError("evaluation order lists " + to_string(dependent) + " before " +
                            to_string(ref));
        return it->second;
    };

    for (const auto& claim : order) {
        const auto* node = c.find(claim);
        if (!node || node->kind != NodeKind::Claim)
            throw CaseError("evaluation order contains non-claim " + to_string(claim));

        ClaimStatus value = ClaimStatus::Unsupported;
        const auto evidence = c.evidence_for(claim);
        if (c.axioms().count(claim)) {
            value = ClaimStatus::Assumed;
        } else if (std::any_of(evidence.begin(), evidence.end(),
                               [](const ArgumentNode* e) { return e->trusted; })) {
            value = ClaimStatus::Supported;
        } else if (const auto* mi = c.concluding(claim)) {
            const auto& inf = mi->inference;
            bool unsupported = !c.find({mi->module, inf.strategy})->developed;
            bool undefined = !inf.justification ||
                             !c.find({mi->module, *inf.justification})->developed;
            // Assumed premises propagate as Supported, but at least one premise
            // must be Supported in its own right so that support bottoms out
            // in trusted evidence.
            bool grounded = false;
            for (const auto& p : inf.premises) {
                const auto s = get({mi->module, p}, claim);
                unsupported = unsupported || s == ClaimStatus::Unsupported;
                undefined = undefined || s == ClaimStatus::Undefined;
                grounded = grounded || s == ClaimStatus::Supported;
            }
            unsupported = unsupported || !grounded;
            value = unsupported ? ClaimStatus::Unsupported
                    : undefined ? ClaimStatus::Undefined
                                : ClaimStatus::Supported;
        } else if (const auto* b = c.binding_into(claim)) {
            value = get(b->from(), claim);
        }
        status[claim] = value;
    }

    for (const auto& [ref, n] : c.nodes())
        if (n.kind == NodeKind::Claim && !status.count(ref))
            throw CaseError("evaluation order omits claim " + to_string(ref));
    return status;
}

std::set<Identifier> SupportTrace::modules() const {
    std::set<Identifier> out;
    for (const auto& n : nodes) out.insert(n.module);
    return out;
}

SupportTrace trace(const AssuranceCase& c, const NodeRef& claim) {
    const auto* start = c.find(claim);
    if (!start || start->kind != NodeKind::Claim)
        throw CaseError("unknown claim " + to_string(claim));

    std::set<NodeRef> nodes, inferences, visited;
    std::set<std::size_t> bindings;
    std::deque<NodeRef> queue{claim};
    while (!queue.empty()) {
        const auto cur = queue.front();
        queue.pop_front();
        if (!visited.insert(cur).second) continue;
        nodes.insert(cur);
        for (const auto* e : c.evidence_for(cur)) nodes.insert({cur.module, e->id});
        if (const auto* mi = c.concluding(cur)) {
            const auto& inf = mi->inference;
            inferences.insert(mi->key());
            nodes.insert({cur.module, inf.strategy});
            if (inf.justification) nodes.insert({cur.module, *inf.justification});
            for (const auto& x : inf.contexts) nodes.insert({cur.module, x});
            for (const auto& p : inf.premises) queue.push_back({cur.module, p});
        }
        const auto& all = c.bindings();
        for (std::size_t i = 0; i < all.size(); ++i)
            if (all[i].to() == cur) {
                bindings.insert(i);
                queue.push_back(all[i].from());
            }
    }

    SupportTrace out;
    out.nodes.assign(nodes.begin(), nodes.end());
    out.inferences.assign(inferences.begin(), inferences.end());
    for (auto i : bindings) out.bindings.push_back(c.bindings()[i]);
    return out;
}

std::vector<NodeRef> assumed_leaves(const AssuranceCase& c, const NodeRef& claim) {
    std::vector<NodeRef> out;
    for (const auto& n : trace(c, claim).nodes)
        if (c.axioms().count(n)) out.push_back(n);
    return out;
}

std::vector<NodeRef> root_guarantees(const AssuranceCase& c) {
    std::vector<NodeRef> out;
    if (const auto* root = c.architecture().root_module(c.structure()))
        for (const auto& g : root->interface_conclusions) out.push_back({root->id, g});
    return out;
}

} // namespace contractcase
