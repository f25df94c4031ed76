#pragma once

// The assurance case: a derived architecture with its argument nodes,
// inferences and axioms. Case values are immutable; every edit returns a new
// case and leaves the original untouched.

#include "contractcase/architect.hpp"
#include "contractcase/model.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace contractcase {

struct ModuleInference {
    Identifier module;
    Inference inference;

    NodeRef key() const { return {module, inference.strategy}; }
    bool operator==(const ModuleInference&) const = default;
};

class AssuranceCase {
public:
    // Derives the architecture and instantiates every template.
    static AssuranceCase from_structure(const SpecificationStructure& structure,
                                        ValidationMode mode = ValidationMode::Lenient);

    // Reassembles a case from persisted parts. The architecture must equal the
    // one derived from the structure; all case invariants are checked.
    static AssuranceCase assemble(SpecificationStructure structure,
                                  AssuranceArchitecture architecture,
                                  std::vector<ArgumentNode> nodes,
                                  std::vector<ModuleInference> inferences,
                                  std::set<NodeRef> axioms);

    const SpecificationStructure& structure() const noexcept { return structure_; }
    const AssuranceArchitecture& architecture() const noexcept { return architecture_; }
    const std::map<NodeRef, ArgumentNode>& nodes() const noexcept { return nodes_; }
    const std::map<NodeRef, ModuleInference>& inferences() const noexcept { return inferences_; }
    const std::set<NodeRef>& axioms() const noexcept { return axioms_; }
    const std::vector<Binding>& bindings() const noexcept { return architecture_.bindings; }

    const ArgumentNode* find(const NodeRef& ref) const;
    std::vector<const ArgumentNode*> module_nodes(std::string_view module) const;
    // Interface scope of template claims; everything else is Internal.
    Scope scope_of(const NodeRef& ref) const;
    // Inference concluding the claim, if any.
    const ModuleInference* concluding(const NodeRef& claim) const;
    // Binding whose "to" end is the claim, if any.
    const Binding* binding_into(const NodeRef& claim) const;
    std::vector<const ArgumentNode*> evidence_for(const NodeRef& claim) const;

    bool operator==(const AssuranceCase&) const = default;

private:
    friend AssuranceCase attach_fragment(const AssuranceCase&, const Identifier&,
                                         std::vector<ArgumentNode>, std::vector<Inference>);
    friend AssuranceCase declare_axiom(const AssuranceCase&, const NodeRef&);
    friend AssuranceCase remove_node(const AssuranceCase&, const NodeRef&);

    void check_invariants() const;
    void check_axiom(const NodeRef& claim) const;

    SpecificationStructure structure_;
    AssuranceArchitecture architecture_;
    std::map<NodeRef, ArgumentNode> nodes_;
    std::map<NodeRef, ModuleInference> inferences_; // keyed by (module, strategy)
    std::map<NodeRef, Scope> scope_;
    std::set<NodeRef> axioms_;
};

// Adds nodes and inferences to one module. A fragment node may reuse the id of
// an undeveloped placeholder of the same kind, which develops it. A fragment
// inference whose strategy already has an inference replaces it; it must keep
// the conclusion and every interface premise. Throws CaseError on cross-module
// references, a second inference for an already-concluded claim, or a cycle.
AssuranceCase attach_fragment(const AssuranceCase& c, const Identifier& module,
                              std::vector<ArgumentNode> nodes,
                              std::vector<Inference> inferences);

// Marks a root-module interface premise as environmental. Premises discharged
// through a binding cannot be axioms.
AssuranceCase declare_axiom(const AssuranceCase& c, const NodeRef& claim);

// Removes an evidence, justification or context node and every reference to it.
AssuranceCase remove_node(const AssuranceCase& c, const NodeRef& node);

enum class ClaimStatus { Unsupported, Undefined, Assumed, Supported };

std::string_view to_string(ClaimStatus status) noexcept;

using StatusMap = std::map<NodeRef, ClaimStatus>;

// (dependency, dependent) pairs over claims: inference premises and binding
// sources. Acyclic for every valid case.
std::vector<std::pair<NodeRef, NodeRef>> claim_dependencies(const AssuranceCase& c);

// First matching rule wins:
//   axiom                                 Assumed
//   trusted evidence supports the claim   Supported
//   conclusion of an inference            Unsupported if the strategy is a
//       placeholder, a premise is Unsupported, or no premise is Supported;
//       else Undefined if the justification is absent or a placeholder, or a
//       premise is Undefined; else Supported
//   premise bound to another module       status of the binding source
//   otherwise                             Unsupported
StatusMap evaluate_status(const AssuranceCase& c);
// Evaluates claims in the given order, which must list every claim after its
// dependencies; throws CaseError otherwise.
StatusMap evaluate_status(const AssuranceCase& c, std::span<const NodeRef> order);

struct SupportTrace {
    std::vector<NodeRef> nodes;      // sorted
    std::vector<NodeRef> inferences; // (module, strategy), sorted
    std::vector<Binding> bindings;   // architecture order

    std::set<Identifier> modules() const;
};

// Everything reachable backwards from the claim. Throws CaseError for unknown
// claims.
SupportTrace trace(const AssuranceCase& c, const NodeRef& claim);

// Axioms on the claim's trace.
std::vector<NodeRef> assumed_leaves(const AssuranceCase& c, const NodeRef& claim);

// Conclusion claims of the root component module.
std::vector<NodeRef> root_guarantees(const AssuranceCase& c);

} // namespace contractcase
