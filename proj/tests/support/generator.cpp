#include "generator.hpp"

#include "contractcase/validator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace contractcase::testing {
namespace {

const std::vector<std::string> kTextPieces = {
    "a", "b", "c", "x", "y", "z", "Q", "0", "7", " ", " ", "\"", "\\", "\\\\", "\"\"",
    "é", "→", "ü", "日本", "#", ";", "{", "}", "->", "\t", "\n", "//", "ok"};

const std::vector<std::string> kComponentPrefixes = {"C", "Ctl", "sensor_", "Unit", "x"};

template <class T>
T pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string random_text(std::mt19937_64& rng) {
    std::string out(1, static_cast<char>('A' + uniform(rng, 0, 25)));
    const int n = uniform(rng, 0, 16);
    for (int i = 0; i < n; ++i) out += pick(rng, kTextPieces);
    return out;
}

class Reach {
public:
    void add(const Identifier& from, const Identifier& to) { adj_[from].insert(to); }
    bool reaches(const Identifier& from, const Identifier& to) const {
        std::set<Identifier> seen;
        std::vector<Identifier> stack{from};
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            if (v == to) return true;
            if (!seen.insert(v).second) continue;
            if (auto it = adj_.find(v); it != adj_.end())
                for (const auto& w : it->second) stack.push_back(w);
        }
        return false;
    }

private:
    std::map<Identifier, std::set<Identifier>> adj_;
};

} // namespace

SpecificationStructure random_structure(std::mt19937_64& rng, const GeneratorLimits& limits) {
    SpecificationStructure s;
    const int n = uniform(rng, 1, limits.max_components);
    std::vector<Identifier> ids;
    std::vector<int> parent(n, -1);
    for (int i = 0; i < n; ++i) {
        ids.push_back(pick(rng, kComponentPrefixes) + std::to_string(i));
        if (i > 0) parent[i] = uniform(rng, 0, i - 1);
    }
    for (int i = 0; i < n; ++i) {
        Component c{ids[i], std::nullopt, ids[i], ""};
        if (parent[i] >= 0) c.parent = ids[parent[i]];
        s.components.push_back(std::move(c));
    }

    int budget = uniform(rng, 1, limits.max_specs);
    int next_spec = 0, next_contract = 0;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin() + 1, order.end(), rng);
    for (int i : order) {
        const int contracts = i == 0 ? uniform(rng, 1, 2) : uniform(rng, 0, 2);
        for (int k = 0; k < contracts && budget > 0; ++k) {
            --budget;
            Contract c;
            c.id = "K" + std::to_string(next_contract++);
            c.component = ids[i];
            const int assumptions = std::min(budget, uniform(rng, 0, 3));
            for (int a = 0; a < assumptions; ++a, --budget)
                c.assumptions.push_back(
                    {"A" + std::to_string(next_spec++), SpecKind::Assumption, random_text(rng)});
            c.guarantee = {"G" + std::to_string(next_spec++), SpecKind::Guarantee, random_text(rng)};
            s.contracts.push_back(std::move(c));
        }
    }

    auto assumptions_of = [&](int comp) {
        std::vector<Identifier> out;
        for (const auto& k : s.contracts)
            if (k.component == ids[comp])
                for (const auto& a : k.assumptions) out.push_back(a.id);
        return out;
    };
    auto guarantees_of = [&](int comp) {
        std::vector<Identifier> out;
        for (const auto& k : s.contracts)
            if (k.component == ids[comp]) out.push_back(k.guarantee.id);
        return out;
    };
    std::vector<std::vector<int>> children(n);
    for (int i = 1; i < n; ++i) children[parent[i]].push_back(i);

    Reach reach;
    for (const auto& k : s.contracts)
        for (const auto& a : k.assumptions) reach.add(a.id, k.guarantee.id);

    int next_ref = 0;
    std::set<Identifier> dropped;
    auto discharge = [&](int comp, const Identifier& a, bool required) {
        std::vector<Identifier> candidates;
        for (int ch : children[comp])
            for (const auto& g : guarantees_of(ch)) candidates.push_back(g);
        if (parent[comp] >= 0) {
            for (const auto& pa : assumptions_of(parent[comp]))
                if (!dropped.count(pa)) candidates.push_back(pa);
            for (int sib : children[parent[comp]])
                if (sib != comp)
                    for (const auto& g : guarantees_of(sib)) candidates.push_back(g);
        }
        std::shuffle(candidates.begin(), candidates.end(), rng);
        if (!required && uniform(rng, 0, 1) == 0) return;
        for (const auto& src : candidates) {
            if (reach.reaches(a, src)) continue;
            reach.add(src, a);
            s.refinements.push_back({"r" + std::to_string(next_ref++), src, a});
            return;
        }
        if (required) dropped.insert(a);
    };
    // Parents before children, so a dropped assumption is never used as a source.
    std::vector<int> bfs{0};
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (int ch : children[bfs[i]]) bfs.push_back(ch);
    for (int comp : bfs)
        for (const auto& a : assumptions_of(comp)) discharge(comp, a, comp != 0);
    for (auto& k : s.contracts)
        k.assumptions.erase(std::remove_if(k.assumptions.begin(), k.assumptions.end(),
                                           [&](const Specification& a) { return dropped.count(a.id) > 0; }),
                            k.assumptions.end());

    std::vector<Identifier> guarantees;
    for (const auto& k : s.contracts) guarantees.push_back(k.guarantee.id);
    const int concerns = uniform(rng, 0, limits.max_concerns);
    for (int i = 0; i < concerns; ++i) {
        std::set<Identifier> covers;
        const int m = uniform(rng, 1, std::min<int>(3, static_cast<int>(guarantees.size())));
        for (int j = 0; j < m; ++j) covers.insert(pick(rng, guarantees));
        s.concerns["concern" + std::to_string(i)] = std::move(covers);
    }

    std::shuffle(s.components.begin(), s.components.end(), rng);
    std::shuffle(s.contracts.begin(), s.contracts.end(), rng);
    std::shuffle(s.refinements.begin(), s.refinements.end(), rng);

    for (const auto& d : validate(s, ValidationMode::Strict))
        if (d.severity == Severity::Error)
            throw std::logic_error("generator produced an invalid structure: " + format(d));
    return s;
}

std::vector<RawEdge> raw_edges(const SpecificationStructure& s) {
    std::vector<RawEdge> out;
    for (const auto& k : s.contracts)
        for (const auto& a : k.assumptions) out.push_back({a.id, k.guarantee.id, ""});
    for (const auto& r : s.refinements) out.push_back({r.source, r.target, r.id});
    return out;
}

std::set<Identifier> brute_force_concern_modules(const SpecificationStructure& s,
                                                 const std::string& concern) {
    std::map<Identifier, Identifier> owner;
    for (const auto& k : s.contracts) {
        owner[k.guarantee.id] = k.component;
        for (const auto& a : k.assumptions) owner[a.id] = k.component;
    }
    const auto edges = raw_edges(s);
    std::set<Identifier> modules;
    std::vector<Identifier> path;
    std::function<void(const Identifier&)> walk = [&](const Identifier& v) {
        if (std::find(path.begin(), path.end(), v) != path.end()) return;
        path.push_back(v);
        modules.insert("M_" + owner.at(v));
        for (const auto& e : edges)
            if (e.to == v) {
                if (!e.refinement.empty()) modules.insert("R_" + e.refinement);
                walk(e.from);
            }
        path.pop_back();
    };
    for (const auto& g : s.concerns.at(concern)) walk(g);
    return modules;
}

Injection inject_cycle(std::mt19937_64& rng, SpecificationStructure& s) {
    std::vector<Identifier> assumptions;
    for (const auto& k : s.contracts)
        for (const auto& a : k.assumptions) assumptions.push_back(a.id);
    if (assumptions.empty()) throw std::invalid_argument("structure has no assumptions");
    const auto target = pick(rng, assumptions);

    const auto edges = raw_edges(s);
    std::vector<Identifier> reachable;
    std::vector<Identifier> stack{target};
    std::set<Identifier> seen;
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (!seen.insert(v).second) continue;
        reachable.push_back(v);
        for (const auto& e : edges)
            if (e.from == v) stack.push_back(e.to);
    }
    const auto source = pick(rng, reachable);
    Injection inj{"r_cycle", source, target};
    s.refinements.push_back({inj.refinement, source, target});
    return inj;
}

} // namespace contractcase::testing
