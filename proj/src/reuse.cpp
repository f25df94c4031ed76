#include "contractcase/reuse.hpp"

#include "contractcase/error.hpp"
#include "contractcase/json_codec.hpp"

#include <algorithm>
#include <deque>

namespace contractcase {

bool StructureDiff::empty() const {
    return changed_specs.empty() && added_specs.empty() && removed_specs.empty() &&
           changed_refinements.empty() && added_refinements.empty() &&
           removed_refinements.empty() && changed_components.empty() &&
           changed_contracts.empty() && added_contracts.empty() && removed_contracts.empty();
}

namespace {

template <class Map>
void compare(const Map& before, const Map& after, std::set<Identifier>& changed,
             std::set<Identifier>& added, std::set<Identifier>& removed) {
    for (const auto& [id, h] : before) {
        auto it = after.find(id);
        if (it == after.end())
            removed.insert(id);
        else if (it->second != h)
            changed.insert(id);
    }
    for (const auto& [id, h] : after)
        if (!before.count(id)) added.insert(id);
}

std::map<Identifier, std::string> spec_hashes(const SpecificationStructure& s) {
    std::map<Identifier, std::string> out;
    for (const auto& k : s.contracts) {
        for (const auto& a : k.assumptions) out.emplace(a.id, content_hash(a));
        out.emplace(k.guarantee.id, content_hash(k.guarantee));
    }
    return out;
}

std::map<Identifier, std::string> refinement_hashes(const SpecificationStructure& s) {
    std::map<Identifier, std::string> out;
    for (const auto& r : s.refinements) out.emplace(r.id, content_hash(s, r));
    return out;
}

std::map<Identifier, std::string> component_hashes(const SpecificationStructure& s) {
    std::map<Identifier, std::string> out;
    for (const auto& c : s.components) out.emplace(c.id, content_hash(s, c));
    return out;
}

std::map<Identifier, std::string> contract_hashes(const SpecificationStructure& s) {
    std::map<Identifier, std::string> out;
    for (const auto& k : s.contracts) out.emplace(k.id, content_hash(k));
    return out;
}

} // namespace

StructureDiff diff_structures(const SpecificationStructure& old_s,
                              const SpecificationStructure& new_s) {
    StructureDiff d;
    compare(spec_hashes(old_s), spec_hashes(new_s), d.changed_specs, d.added_specs,
            d.removed_specs);
    compare(refinement_hashes(old_s), refinement_hashes(new_s), d.changed_refinements,
            d.added_refinements, d.removed_refinements);
    std::set<Identifier> modified;
    compare(component_hashes(old_s), component_hashes(new_s), modified, d.added_components,
            d.removed_components);
    d.changed_components = modified;
    d.changed_components.insert(d.added_components.begin(), d.added_components.end());
    d.changed_components.insert(d.removed_components.begin(), d.removed_components.end());
    compare(contract_hashes(old_s), contract_hashes(new_s), d.changed_contracts,
            d.added_contracts, d.removed_contracts);
    for (const auto& k : new_s.contracts)
        if (d.added_contracts.count(k.id) || d.changed_contracts.count(k.id))
            d.new_contract_owner.emplace(k.id, k.component);
    return d;
}

ImpactReport impact(const AssuranceCase& old_case, const StructureDiff& diff) {
    const auto& old_s = old_case.structure();
    const auto& arch = old_case.architecture();

    std::map<Identifier, std::set<Identifier>> old_alloc, new_alloc; // component -> contracts
    for (const auto& k : old_s.contracts) old_alloc[k.component].insert(k.id);
    std::map<Identifier, Identifier> owner_now;
    for (const auto& k : old_s.contracts)
        if (!diff.removed_contracts.count(k.id)) owner_now[k.id] = k.component;
    for (const auto& [k, comp] : diff.new_contract_owner) owner_now[k] = comp;
    for (const auto& [k, comp] : owner_now)
        if (!diff.removed_components.count(comp)) new_alloc[comp].insert(k);

    std::set<Identifier> old_modules, new_modules;
    for (const auto& id : arch.module_ids()) old_modules.insert(id);
    for (const auto& [comp, ks] : new_alloc)
        if (!ks.empty()) new_modules.insert(component_module_id(comp));
    for (const auto& r : old_s.refinements)
        if (!diff.removed_refinements.count(r.id)) new_modules.insert(refinement_module_id(r.id));
    for (const auto& r : diff.added_refinements) new_modules.insert(refinement_module_id(r));

    auto contract_touched = [&](const Identifier& k) {
        return diff.changed_contracts.count(k) || diff.added_contracts.count(k) ||
               diff.removed_contracts.count(k);
    };
    auto component_stale = [&](const ComponentModule& m) {
        if (diff.changed_components.count(m.component)) return true;
        if (old_alloc[m.component] != new_alloc[m.component]) return true;
        for (const auto& k : old_alloc[m.component])
            if (contract_touched(k)) return true;
        for (const auto& k : new_alloc[m.component])
            if (contract_touched(k)) return true;
        for (const auto& p : m.interface_premises)
            if (diff.changed_specs.count(p)) return true;
        for (const auto& g : m.interface_conclusions)
            if (diff.changed_specs.count(g)) return true;
        return false;
    };
    auto refinement_stale = [&](const RefinementModule& m) {
        return diff.changed_refinements.count(m.refinement) ||
               diff.changed_specs.count(m.premise_spec) ||
               diff.changed_specs.count(m.conclusion_spec);
    };

    ImpactReport report;
    for (const auto& id : old_modules) {
        if (!new_modules.count(id)) {
            report.removed.insert(id);
            continue;
        }
        bool stale = false;
        if (const auto* cm = arch.find_component_module(id)) stale = component_stale(*cm);
        if (const auto* rm = arch.find_refinement_module(id)) stale = refinement_stale(*rm);
        (stale ? report.needs_reverification : report.reusable).insert(id);
    }
    for (const auto& id : new_modules)
        if (!old_modules.count(id)) report.added.insert(id);
    return report;
}

namespace {

void list(std::string& out, std::string_view title, const std::set<Identifier>& ids) {
    out += std::string(title) + " (" + std::to_string(ids.size()) + "):";
    for (const auto& id : ids) out += " " + id;
    out += "\n";
}

} // namespace

std::string impact_to_text(const ImpactReport& r) {
    std::string out;
    list(out, "needs-reverification", r.needs_reverification);
    list(out, "reusable", r.reusable);
    list(out, "new", r.added);
    list(out, "removed", r.removed);
    return out;
}

std::string impact_to_json(const ImpactReport& r) {
    auto doc = json::document_header("impact");
    doc["needs_reverification"] = r.needs_reverification;
    doc["reusable"] = r.reusable;
    doc["new"] = r.added;
    doc["removed"] = r.removed;
    return json::dump(doc);
}

std::string_view to_string(ModuleKind kind) noexcept {
    return kind == ModuleKind::Component ? "component" : "refinement";
}

std::string_view to_string(Provenance p) noexcept {
    return p == Provenance::Cached ? "Cached" : "New";
}

std::string module_key(const SpecificationStructure& structure, const ComponentModule& module) {
    std::vector<std::pair<Identifier, std::string>> parts;
    for (const auto& kid : module.contracts) {
        const auto* k = structure.find_contract(kid);
        if (!k) throw ReferenceError(kid, "component module " + module.id);
        parts.emplace_back(k->id, content_hash(*k));
    }
    std::sort(parts.begin(), parts.end());
    std::vector<std::string> fields{"component-module"};
    for (const auto& [id, h] : parts) fields.push_back(h);
    return combined_hash(fields);
}

std::string module_key(const SpecificationStructure& structure, const RefinementModule& module) {
    const auto* r = structure.find_refinement(module.refinement);
    if (!r) throw ReferenceError(module.refinement, "refinement module " + module.id);
    return combined_hash({"refinement-module", content_hash(structure, *r)});
}

const LibraryRecord* ModuleLibrary::find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

void ModuleLibrary::insert(LibraryRecord record) {
    auto key = record.key;
    entries_.insert_or_assign(std::move(key), std::move(record));
}

void ModuleLibrary::harvest(const AssuranceCase& c) {
    const auto status = evaluate_status(c);
    auto fill = [&](LibraryRecord& rec) {
        for (const auto* n : c.module_nodes(rec.module)) rec.nodes.push_back(*n);
        for (const auto& [key, mi] : c.inferences())
            if (mi.module == rec.module) rec.inferences.push_back(mi.inference);
        for (const auto& a : c.axioms())
            if (a.module == rec.module) rec.axioms.push_back(a.node);
        for (const auto& [ref, s] : status)
            if (ref.module == rec.module) rec.status.emplace(ref.node, s);
    };
    const auto& s = c.structure();
    for (const auto& m : c.architecture().component_modules) {
        LibraryRecord rec{module_key(s, m), m.id, ModuleKind::Component,
                          m.interface_premises, m.interface_conclusions, {}, {}, {}, {}};
        fill(rec);
        insert(std::move(rec));
    }
    for (const auto& m : c.architecture().refinement_modules) {
        LibraryRecord rec{module_key(s, m), m.id, ModuleKind::Refinement,
                          {m.premise_spec}, {m.conclusion_spec}, {}, {}, {}, {}};
        fill(rec);
        insert(std::move(rec));
    }
}

VariantAssembly assemble_variant(const ModuleLibrary& library,
                                 const SpecificationStructure& structure) {
    const auto diagnostics = validate(structure, ValidationMode::Strict);
    if (has_errors(diagnostics)) {
        std::vector<Diagnostic> blocking;
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error) blocking.push_back(d);
        throw ArchitectureError(std::move(blocking));
    }
    const auto fresh = AssuranceCase::from_structure(structure, ValidationMode::Strict);
    const auto& arch = fresh.architecture();
    const auto* root = arch.root_module(structure);

    VariantAssembly out{fresh, {}, {}};
    std::vector<ArgumentNode> nodes;
    std::vector<ModuleInference> inferences;
    std::set<NodeRef> axioms;

    auto use_template = [&](const Identifier& module) {
        for (const auto* n : fresh.module_nodes(module)) nodes.push_back(*n);
        for (const auto& [key, mi] : fresh.inferences())
            if (mi.module == module) inferences.push_back(mi);
        out.provenance[module] = Provenance::New;
    };
    auto use_record = [&](const LibraryRecord& rec, const Identifier& module, ModuleKind kind,
                          const std::vector<Identifier>& premises,
                          const std::vector<Identifier>& conclusions) {
        if (rec.module != module || rec.kind != kind || rec.interface_premises != premises ||
            rec.interface_conclusions != conclusions)
            throw LibraryCorruptionError("library record " + rec.key + " (" + rec.module +
                                         ") does not match the shape of module " + module);
        for (auto n : rec.nodes) {
            n.module = module;
            nodes.push_back(std::move(n));
        }
        for (const auto& inf : rec.inferences) inferences.push_back({module, inf});
        for (const auto& a : rec.axioms) {
            NodeRef ref{module, a};
            bool bound = std::any_of(arch.bindings.begin(), arch.bindings.end(),
                                     [&](const Binding& b) { return b.to() == ref; });
            if (root && root->id == module && !bound) axioms.insert(ref);
        }
        for (const auto& [claim, s] : rec.status) out.imported_status[{module, claim}] = s;
        out.provenance[module] = Provenance::Cached;
    };

    for (const auto& m : arch.component_modules) {
        if (const auto* rec = library.find(module_key(structure, m)))
            use_record(*rec, m.id, ModuleKind::Component, m.interface_premises,
                       m.interface_conclusions);
        else
            use_template(m.id);
    }
    for (const auto& m : arch.refinement_modules) {
        if (const auto* rec = library.find(module_key(structure, m)))
            use_record(*rec, m.id, ModuleKind::Refinement, {m.premise_spec},
                       {m.conclusion_spec});
        else
            use_template(m.id);
    }

    try {
        out.assurance_case = AssuranceCase::assemble(structure, arch, std::move(nodes),
                                                     std::move(inferences), std::move(axioms));
    } catch (const CaseError& e) {
        throw LibraryCorruptionError(std::string("cached module content is inconsistent: ") +
                                     e.what());
    }
    return out;
}

std::set<Identifier> concern_modules(const AssuranceCase& c, const std::string& concern) {
    const auto& s = c.structure();
    auto it = s.concerns.find(concern);
    if (it == s.concerns.end()) throw Error("unknown concern '" + concern + "'");
    const auto graph = build_graph(s);

    std::map<Identifier, std::vector<const SpecEdge*>> incoming;
    for (const auto& e : graph.edges) incoming[e.to].push_back(&e);

    std::set<Identifier> modules, seen;
    std::deque<Identifier> queue(it->second.begin(), it->second.end());
    while (!queue.empty()) {
        auto spec = queue.front();
        queue.pop_front();
        if (!seen.insert(spec).second) continue;
        modules.insert(component_module_id(owner_of(s, spec).component));
        for (const auto* e : incoming[spec]) {
            if (e->kind == EdgeKind::RefinementOf) modules.insert(refinement_module_id(e->via));
            queue.push_back(e->from);
        }
    }
    return modules;
}

} // namespace contractcase
