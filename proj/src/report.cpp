#include "contractcase/export.hpp"

#include <algorithm>

namespace contractcase {
namespace {

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::vector<std::string> module_issues(const AssuranceCase& c, const Identifier& module) {
    std::vector<std::string> issues;
    for (const auto& [key, mi] : c.inferences()) {
        if (mi.module != module) continue;
        const auto& inf = mi.inference;
        const auto* strategy = c.find({module, inf.strategy});
        if (strategy && !strategy->developed)
            issues.push_back("undeveloped strategy " + inf.strategy);
        if (!inf.justification) {
            issues.push_back("missing justification for " + inf.conclusion);
        } else if (const auto* j = c.find({module, *inf.justification}); j && !j->developed) {
            issues.push_back("undeveloped justification " + *inf.justification);
        }
    }
    for (const auto* n : c.module_nodes(module))
        if (n->kind == NodeKind::Evidence && !n->trusted)
            issues.push_back("untrusted evidence " + n->id);
    return issues;
}

} // namespace

std::string to_report(const AssuranceCase& c) {
    const auto status = evaluate_status(c);
    std::string out = "Assurance case report\n\nRoot guarantees\n";
    const auto roots = root_guarantees(c);
    if (roots.empty()) out += "  (none)\n";
    for (const auto& g : roots) {
        const auto leaves = assumed_leaves(c, g);
        out += "  " + g.node + ": " + std::string(to_string(status.at(g))) +
               "; assumed leaves: " + std::to_string(leaves.size());
        if (!leaves.empty()) {
            out += " (";
            for (std::size_t i = 0; i < leaves.size(); ++i)
                out += (i ? ", " : "") + leaves[i].node;
            out += ")";
        }
        out += "\n";
    }

    struct Row {
        std::string module, kind, conclusions, placeholders, assumed, issues;
    };
    std::vector<Row> rows;
    std::vector<std::pair<Identifier, std::vector<std::string>>> flagged;
    auto ids = c.architecture().module_ids();
    std::sort(ids.begin(), ids.end());
    for (const auto& module : ids) {
        Row row;
        row.module = module;
        row.kind = c.architecture().find_component_module(module) ? "component" : "refinement";
        std::size_t placeholders = 0, assumed = 0;
        for (const auto* n : c.module_nodes(module)) {
            if (!n->developed) ++placeholders;
            const NodeRef ref{module, n->id};
            if (n->kind != NodeKind::Claim) continue;
            if (status.at(ref) == ClaimStatus::Assumed) ++assumed;
            if (c.scope_of(ref) == Scope::InterfaceConclusion) {
                if (!row.conclusions.empty()) row.conclusions += " ";
                row.conclusions += n->id + "=" + std::string(to_string(status.at(ref)));
            }
        }
        row.placeholders = std::to_string(placeholders);
        row.assumed = std::to_string(assumed);
        auto issues = module_issues(c, module);
        row.issues = issues.empty() ? "-" : std::to_string(issues.size());
        if (!issues.empty()) flagged.emplace_back(module, std::move(issues));
        rows.push_back(std::move(row));
    }

    const Row head{"module", "kind", "conclusions", "placeholders", "assumed", "issues"};
    std::size_t w[5] = {head.module.size(), head.kind.size(), head.conclusions.size(),
                        head.placeholders.size(), head.assumed.size()};
    for (const auto& r : rows) {
        w[0] = std::max(w[0], r.module.size());
        w[1] = std::max(w[1], r.kind.size());
        w[2] = std::max(w[2], r.conclusions.size());
        w[3] = std::max(w[3], r.placeholders.size());
        w[4] = std::max(w[4], r.assumed.size());
    }
    const auto line = [&](const Row& r) {
        return "  " + pad(r.module, w[0]) + "  " + pad(r.kind, w[1]) + "  " +
               pad(r.conclusions, w[2]) + "  " + pad(r.placeholders, w[3]) + "  " +
               pad(r.assumed, w[4]) + "  " + r.issues + "\n";
    };
    out += "\nModules\n" + line(head);
    for (const auto& r : rows) out += line(r);

    out += "\nFlagged modules\n";
    if (flagged.empty()) out += "  (none)\n";
    for (const auto& [module, issues] : flagged)
        for (const auto& issue : issues) out += "  " + module + ": " + issue + "\n";
    return out;
}

} // namespace contractcase
