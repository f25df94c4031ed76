#include "contractcase/validator.hpp"

#include "contractcase/json_codec.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace contractcase {

std::string_view to_string(RuleCode code) noexcept {
    static constexpr std::string_view names[] = {"W1", "W2", "W3", "W4", "W5",
                                                 "W6", "W7", "W8", "W9"};
    return names[static_cast<int>(code) - 1];
}

std::string_view to_string(Severity severity) noexcept {
    return severity == Severity::Error ? "error" : "warning";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format(const Diagnostic& d, bool color) {
    std::string head = std::string(to_string(d.code)) + " " + std::string(to_string(d.severity));
    if (color) head = (d.severity == Severity::Error ? "\x1b[31m" : "\x1b[33m") + head + "\x1b[0m";
    return head + ": " + d.message;
}

std::string diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
    auto arr = json::Value::array();
    for (const auto& d : diagnostics) {
        json::Value o = json::Value::object();
        o["code"] = to_string(d.code);
        o["severity"] = to_string(d.severity);
        o["subjects"] = d.subjects;
        o["message"] = d.message;
        arr.push_back(std::move(o));
    }
    return json::dump(arr);
}

namespace {

std::string join(const std::vector<Identifier>& ids, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += sep;
        out += ids[i];
    }
    return out;
}

class Checker {
public:
    Checker(const SpecificationStructure& s, ValidationMode mode) : s_(s), mode_(mode) {
        for (const auto& k : s_.contracts) {
            for (const auto& a : k.assumptions) declare_spec(a, k);
            declare_spec(k.guarantee, k);
        }
    }

    std::vector<Diagnostic> run() {
        duplicates();
        references();
        tree();
        multiply_declared();
        refinements();
        discharges();
        cycles();
        empty_components();
        std::sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.code, a.subjects, a.message) <
                   std::tie(b.code, b.subjects, b.message);
        });
        return std::move(out_);
    }

private:
    struct SpecInfo {
        const Specification* spec = nullptr;
        std::vector<const Contract*> owners;
    };

    void declare_spec(const Specification& spec, const Contract& k) {
        auto& info = specs_[spec.id];
        if (!info.spec) info.spec = &spec;
        if (std::find(info.owners.begin(), info.owners.end(), &k) == info.owners.end())
            info.owners.push_back(&k);
    }

    void emit(RuleCode code, std::vector<Identifier> subjects, std::string message,
              Severity severity = Severity::Error) {
        out_.push_back({code, severity, std::move(subjects), std::move(message)});
    }

    const SpecInfo* spec(const Identifier& id) const {
        auto it = specs_.find(id);
        return it == specs_.end() ? nullptr : &it->second;
    }

    // Owning component of a spec declared by exactly one contract, or null.
    const Component* owner(const Identifier& id) const {
        const auto* info = spec(id);
        if (!info || info->owners.size() != 1) return nullptr;
        return s_.find_component(info->owners.front()->component);
    }

    bool is_root(const Component& c) const { return !c.parent.has_value(); }

    void duplicates() {
        auto check = [&](auto&& items, std::string_view kind) {
            std::map<Identifier, int> seen;
            for (const auto& item : items) ++seen[item.id];
            for (const auto& [id, n] : seen)
                if (n > 1)
                    emit(RuleCode::W1, {id},
                         "duplicate " + std::string(kind) + " id '" + id + "' declared " +
                             std::to_string(n) + " times");
        };
        check(s_.components, "component");
        check(s_.contracts, "contract");
        check(s_.refinements, "refinement");
        for (const auto& k : s_.contracts) {
            std::set<Identifier> ids;
            for (const auto& a : k.assumptions)
                if (!ids.insert(a.id).second || a.id == k.guarantee.id)
                    emit(RuleCode::W1, {a.id, k.id},
                         "duplicate specification id '" + a.id + "' in contract " + k.id);
        }
    }

    void references() {
        for (const auto& c : s_.components)
            if (c.parent && !s_.find_component(*c.parent))
                emit(RuleCode::W1, {c.id, *c.parent},
                     "component " + c.id + " is declared within unknown component " + *c.parent);
        for (const auto& k : s_.contracts)
            if (!s_.find_component(k.component))
                emit(RuleCode::W1, {k.id, k.component},
                     "contract " + k.id + " is allocated to unknown component " + k.component);
        for (const auto& r : s_.refinements) {
            if (!spec(r.source))
                emit(RuleCode::W1, {r.id, r.source},
                     "refinement " + r.id + " has unknown source specification " + r.source);
            if (!spec(r.target))
                emit(RuleCode::W1, {r.id, r.target},
                     "refinement " + r.id + " has unknown target specification " + r.target);
        }
        for (const auto& [name, covers] : s_.concerns)
            for (const auto& g : covers) {
                const auto* info = spec(g);
                if (!info)
                    emit(RuleCode::W1, {name, g},
                         "concern " + name + " covers unknown specification " + g);
                else if (info->spec->kind != SpecKind::Guarantee)
                    emit(RuleCode::W1, {name, g},
                         "concern " + name + " covers " + g + ", which is not a guarantee");
            }
    }

    void tree() {
        if (s_.components.empty()) {
            emit(RuleCode::W2, {}, "structure declares no components; a single root is required");
            return;
        }
        const auto roots = s_.roots();
        if (roots.empty())
            emit(RuleCode::W2, {}, "no root component; every component declares a parent");
        else if (roots.size() > 1)
            emit(RuleCode::W2, roots,
                 std::to_string(roots.size()) + " root components (" + join(roots, ", ") +
                     "); exactly one is required");

        // Walk each component's parent chain; components whose chain loops are
        // not part of the tree.
        std::set<Identifier> reported;
        for (const auto& c : s_.components) {
            std::vector<Identifier> chain{c.id};
            const Component* cur = &c;
            while (cur && cur->parent) {
                const auto& p = *cur->parent;
                if (std::find(chain.begin(), chain.end(), p) != chain.end()) {
                    auto start = std::find(chain.begin(), chain.end(), p);
                    std::vector<Identifier> loop(start, chain.end());
                    std::sort(loop.begin(), loop.end());
                    if (reported.insert(join(loop, ",")).second)
                        emit(RuleCode::W2, loop,
                             "component parent relation is cyclic: " + join(loop, ", "));
                    break;
                }
                chain.push_back(p);
                cur = s_.find_component(p);
            }
        }
    }

    void multiply_declared() {
        for (const auto& [id, info] : specs_) {
            if (info.owners.size() < 2) continue;
            std::vector<Identifier> subjects{id};
            for (const auto* k : info.owners) subjects.push_back(k->id);
            emit(RuleCode::W3, subjects,
                 "specification " + id + " is declared by " + std::to_string(info.owners.size()) +
                     " contracts (" + join({subjects.begin() + 1, subjects.end()}, ", ") + ")");
        }
    }

    void refinements() {
        for (const auto& r : s_.refinements) {
            const auto* src = spec(r.source);
            const auto* dst = spec(r.target);
            if (!src || !dst) continue;
            if (dst->spec->kind != SpecKind::Assumption) {
                emit(RuleCode::W4, {r.id, r.target},
                     "refinement " + r.id + " targets guarantee " + r.target +
                         "; refinements must target assumptions (A⊑A or G⊑A only)");
                continue;
            }
            const auto* from = owner(r.source);
            const auto* to = owner(r.target);
            if (!from || !to) continue;
            if (dependency_kind(s_, r) == DependencyKind::Illegal)
                emit(RuleCode::W5, {r.id, r.source, r.target},
                     "refinement " + r.id + " from " + std::string(to_string(src->spec->kind)) +
                         " " + r.source + " of " + from->id + " to assumption " + r.target +
                         " of " + to->id +
                         " matches no dependency kind (parent assumption to child assumption, "
                         "sibling guarantee to sibling assumption, child guarantee to parent "
                         "assumption)");
        }
    }

    void discharges() {
        std::map<Identifier, std::vector<Identifier>> by_target;
        for (const auto& r : s_.refinements) by_target[r.target].push_back(r.id);
        for (const auto& [target, refs] : by_target) {
            const auto* info = spec(target);
            if (!info || info->spec->kind != SpecKind::Assumption || refs.size() < 2) continue;
            std::vector<Identifier> subjects{target};
            subjects.insert(subjects.end(), refs.begin(), refs.end());
            emit(RuleCode::W6, subjects,
                 "assumption " + target + " is discharged by " + std::to_string(refs.size()) +
                     " refinements (" + join(refs, ", ") + "); at most one is allowed");
        }
        const auto severity = mode_ == ValidationMode::Strict ? Severity::Error : Severity::Warning;
        for (const auto& k : s_.contracts) {
            const auto* comp = s_.find_component(k.component);
            if (!comp || is_root(*comp)) continue;
            for (const auto& a : k.assumptions)
                if (!by_target.count(a.id))
                    emit(RuleCode::W7, {a.id},
                         "assumption " + a.id + " of non-root component " + comp->id +
                             " is not discharged by any refinement",
                         severity);
        }
    }

    void cycles() {
        std::map<Identifier, std::set<Identifier>> adj;
        for (const auto& [id, info] : specs_) adj[id];
        for (const auto& k : s_.contracts)
            for (const auto& a : k.assumptions) adj[a.id].insert(k.guarantee.id);
        for (const auto& r : s_.refinements)
            if (spec(r.source) && spec(r.target)) adj[r.source].insert(r.target);

        // Tarjan's strongly connected components.
        std::map<Identifier, int> index, low;
        std::set<Identifier> on_stack;
        std::vector<Identifier> stack;
        std::vector<std::vector<Identifier>> sccs;
        int counter = 0;
        std::function<void(const Identifier&)> visit = [&](const Identifier& v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack.insert(v);
            for (const auto& w : adj[v]) {
                if (!index.count(w)) {
                    visit(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack.count(w)) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] == index[v]) {
                std::vector<Identifier> scc;
                Identifier w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack.erase(w);
                    scc.push_back(w);
                } while (w != v);
                sccs.push_back(std::move(scc));
            }
        };
        for (const auto& [v, _] : adj)
            if (!index.count(v)) visit(v);

        for (auto& scc : sccs) {
            std::sort(scc.begin(), scc.end());
            const auto& start = scc.front();
            if (scc.size() == 1 && !adj[start].count(start)) continue;
            const std::set<Identifier> members(scc.begin(), scc.end());
            auto cycle = shortest_cycle(adj, members, start);
            emit(RuleCode::W8, cycle,
                 "specification graph has a cycle: " + join(cycle, " -> "));
        }
    }

    static std::vector<Identifier> shortest_cycle(
        const std::map<Identifier, std::set<Identifier>>& adj,
        const std::set<Identifier>& members, const Identifier& start) {
        std::map<Identifier, Identifier> prev;
        std::deque<Identifier> queue{start};
        std::set<Identifier> seen{start};
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            for (const auto& w : adj.at(v)) {
                if (!members.count(w)) continue;
                if (w == start) {
                    std::vector<Identifier> path{start};
                    for (Identifier cur = v; cur != start; cur = prev.at(cur)) path.push_back(cur);
                    path.push_back(start);
                    std::reverse(path.begin() + 1, path.end() - 1);
                    return path;
                }
                if (seen.insert(w).second) {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        return {start, start};
    }

    void empty_components() {
        std::set<Identifier> seen;
        for (const auto& c : s_.components)
            if (seen.insert(c.id).second && s_.contracts_of(c.id).empty())
                emit(RuleCode::W9, {c.id},
                     "component " + c.id + " has no allocated contract and gets no assurance module",
                     Severity::Warning);
    }

    const SpecificationStructure& s_;
    ValidationMode mode_;
    std::map<Identifier, SpecInfo> specs_;
    std::vector<Diagnostic> out_;
};

} // namespace

std::vector<Diagnostic> validate(const SpecificationStructure& structure, ValidationMode mode) {
    return Checker(structure, mode).run();
}

} // namespace contractcase
