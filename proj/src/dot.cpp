#include "contractcase/error.hpp"
#include "contractcase/export.hpp"

#include <algorithm>

namespace contractcase {

std::optional<View> parse_view(std::string_view text) noexcept {
    if (text == "architecture") return View::Architecture;
    if (text == "argument") return View::Argument;
    if (text == "specgraph") return View::SpecGraph;
    return std::nullopt;
}

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

void header(std::string& out, std::string_view name) {
    out += "digraph " + std::string(name) + " {\n";
    out += "  rankdir=BT;\n";
    out += "  node [fontsize=10];\n";
    out += "  edge [fontsize=9];\n";
}

std::string shape_of(NodeKind kind) {
    switch (kind) {
    case NodeKind::Claim: return "shape=box";
    case NodeKind::Strategy: return "shape=parallelogram";
    case NodeKind::Justification: return "shape=ellipse";
    case NodeKind::Context: return "shape=box, style=rounded";
    case NodeKind::Evidence: return "shape=circle";
    }
    return "shape=box";
}

} // namespace

std::string to_dot_architecture(const AssuranceArchitecture& a) {
    struct Row {
        Identifier id;
        std::string attrs;
    };
    std::vector<Row> rows;
    for (const auto& m : a.component_modules)
        rows.push_back({m.id, "shape=tab, label=" + quote(m.id + "\n" + m.component)});
    for (const auto& m : a.refinement_modules)
        rows.push_back({m.id, "shape=component, label=" +
                                  quote(m.id + "\n" + m.premise_spec + " -> " + m.conclusion_spec)});
    std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.id < y.id; });

    std::string out;
    header(out, "architecture");
    for (const auto& r : rows) out += "  " + quote(r.id) + " [" + r.attrs + "];\n";
    for (const auto& b : a.bindings)
        out += "  " + quote(b.from_module) + " -> " + quote(b.to_module) +
               " [label=" + quote(b.from_claim == b.to_claim ? b.from_claim
                                                             : b.from_claim + " -> " + b.to_claim) +
               "];\n";
    out += "}\n";
    return out;
}

std::string to_dot_argument(const AssuranceCase& c, const RenderOptions& options) {
    std::set<Identifier> modules;
    for (const auto& id : c.architecture().module_ids()) modules.insert(id);
    if (options.module_filter) {
        for (const auto& id : *options.module_filter)
            if (!modules.count(id)) throw Error("unknown module '" + id + "' in filter");
        modules = *options.module_filter;
    }
    StatusMap status;
    if (options.include_status) status = evaluate_status(c);

    std::string out;
    header(out, "argument");
    for (const auto& module : modules) {
        out += "  subgraph cluster_" + module + " {\n";
        out += "    label=" + quote(module) + ";\n";
        for (const auto* n : c.module_nodes(module)) {
            const NodeRef ref{module, n->id};
            std::string label = n->id + ": " + n->text;
            if (n->kind == NodeKind::Justification) label += " (J)";
            if (n->kind == NodeKind::Evidence)
                label += "\n" + n->artifact + (n->trusted ? "" : " (untrusted)");
            if (n->kind == NodeKind::Claim && options.include_status)
                label += "\n[" + std::string(to_string(status.at(ref))) + "]";
            out += "    " + quote(to_string(ref)) + " [" + shape_of(n->kind) +
                   ", label=" + quote(label) + "];\n";
        }
        out += "  }\n";
    }

    for (const auto& [key, mi] : c.inferences()) {
        if (!modules.count(mi.module)) continue;
        const auto& inf = mi.inference;
        const auto node = [&](const Identifier& id) { return quote(mi.module + "/" + id); };
        for (const auto& p : inf.premises) out += "  " + node(p) + " -> " + node(inf.strategy) + ";\n";
        out += "  " + node(inf.strategy) + " -> " + node(inf.conclusion) + ";\n";
        if (inf.justification)
            out += "  " + node(*inf.justification) + " -> " + node(inf.strategy) +
                   " [style=dashed, arrowhead=none];\n";
        for (const auto& x : inf.contexts)
            out += "  " + node(x) + " -> " + node(inf.strategy) +
                   " [style=dashed, arrowhead=none];\n";
    }
    for (const auto& [ref, n] : c.nodes())
        if (modules.count(ref.module) && n.kind == NodeKind::Evidence && n.supports)
            out += "  " + quote(to_string(ref)) + " -> " +
                   quote(ref.module + "/" + *n.supports) + ";\n";
    for (const auto& b : c.bindings())
        if (modules.count(b.from_module) && modules.count(b.to_module))
            out += "  " + quote(to_string(b.from())) + " -> " + quote(to_string(b.to())) +
                   " [style=bold];\n";
    out += "}\n";
    return out;
}

std::string to_dot_specgraph(const SpecificationStructure& structure) {
    const auto graph = build_graph(structure);
    std::string out;
    header(out, "specgraph");
    for (const auto& id : graph.nodes) {
        const auto* spec = structure.find_spec(id);
        const bool assumption = spec && spec->kind == SpecKind::Assumption;
        out += "  " + quote(id) + " [shape=" + (assumption ? "ellipse" : "box") +
               ", label=" + quote(id) + "];\n";
    }
    auto edges = graph.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges)
        out += "  " + quote(e.from) + " -> " + quote(e.to) + " [label=" +
               quote(e.kind == EdgeKind::AssumptionOf ? "a" : e.via) + "];\n";
    out += "}\n";
    return out;
}

std::string render(const AssuranceCase& c, const RenderOptions& options) {
    switch (options.view) {
    case View::Architecture: return to_dot_architecture(c.architecture());
    case View::Argument: return to_dot_argument(c, options);
    case View::SpecGraph: return to_dot_specgraph(c.structure());
    }
    return {};
}

} // namespace contractcase
