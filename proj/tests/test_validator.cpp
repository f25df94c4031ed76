#include "contractcase/json_codec.hpp"
#include "contractcase/validator.hpp"
#include "support/fixtures.hpp"
#include "support/generator.hpp"

#include <doctest.h>

#include <algorithm>

using namespace contractcase;
using contractcase::testing::ex_structure;
using contractcase::testing::parse_or_throw;

namespace {

std::vector<Diagnostic> with_code(const std::vector<Diagnostic>& ds, RuleCode code) {
    std::vector<Diagnostic> out;
    std::copy_if(ds.begin(), ds.end(), std::back_inserter(out),
                 [&](const Diagnostic& d) { return d.code == code; });
    return out;
}

SpecificationStructure ex_plus(const std::string& extra) {
    return parse_or_throw(testing::read_fixture("ex.cbd") + extra);
}

} // namespace

TEST_CASE("the example is clean in both modes") {
    CHECK(validate(ex_structure(), ValidationMode::Strict).empty());
    CHECK(validate(ex_structure(), ValidationMode::Lenient).empty());
}

TEST_CASE("W1 unresolved references") {
    const auto s = parse_or_throw(
        "component A;\ncomponent B within Q;\ncontract K for Z { guarantee G: \"g\"; }\n"
        "refine r: G -> A9;\nconcern c covers G7;\n");
    const auto w1 = with_code(validate(s), RuleCode::W1);
    CHECK(w1.size() == 4);
    for (const auto& d : w1) CHECK(d.severity == Severity::Error);
}

TEST_CASE("W2 tree shape") {
    CHECK(with_code(validate(SpecificationStructure{}), RuleCode::W2).size() == 1);
    const auto two_roots = parse_or_throw("component A;\ncomponent B;\n");
    const auto w2 = with_code(validate(two_roots), RuleCode::W2);
    REQUIRE(w2.size() == 1);
    CHECK(w2[0].subjects == std::vector<Identifier>{"A", "B"});
    const auto loop = parse_or_throw("component R;\ncomponent A within B;\ncomponent B within A;\n");
    CHECK_FALSE(with_code(validate(loop), RuleCode::W2).empty());
}

TEST_CASE("W3 specification declared twice") {
    auto s = ex_structure();
    s.contracts[1].assumptions.push_back({"A1", SpecKind::Assumption, "again"});
    const auto w3 = with_code(validate(s), RuleCode::W3);
    REQUIRE(w3.size() == 1);
    CHECK(w3[0].subjects.front() == "A1");
}

TEST_CASE("W4 guarantee targets, one diagnostic only") {
    const auto ds = validate(ex_plus("refine r5: G4 -> G1;\n"));
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == RuleCode::W4);
    CHECK(ds[0].severity == Severity::Error);
    CHECK(format(ds[0]) ==
          "W4 error: refinement r5 targets guarantee G1; refinements must target assumptions "
          "(A⊑A or G⊑A only)");
    CHECK(format(ds[0], true).find("\x1b[") != std::string::npos);
}

TEST_CASE("W5 illegal dependency kinds") {
    // child assumption to parent assumption
    auto ds = validate(ex_plus("refine r5: A2 -> A5;\n"));
    CHECK(with_code(ds, RuleCode::W5).size() == 1);
    // skip-level: grandchild guarantee to the root
    ds = validate(ex_plus("component D within C3;\ncontract KD for D { guarantee GD: \"d\"; }\n"
                          "refine r5: GD -> A5;\n"));
    CHECK(with_code(ds, RuleCode::W5).size() == 1);
    // a component's own guarantee
    ds = validate(ex_plus("refine r5: G1 -> A1;\n"));
    CHECK(with_code(ds, RuleCode::W5).size() == 1);
}

TEST_CASE("W6 over-discharged assumption") {
    const auto ds = validate(ex_plus("refine r5: G3 -> A5;\n"));
    const auto w6 = with_code(ds, RuleCode::W6);
    REQUIRE(w6.size() == 1);
    CHECK(w6[0].subjects == std::vector<Identifier>{"A5", "r4", "r5"});
}

TEST_CASE("W7 depends on the mode") {
    auto s = ex_structure();
    s.refinements.erase(s.refinements.begin()); // r1
    const auto strict = with_code(validate(s, ValidationMode::Strict), RuleCode::W7);
    REQUIRE(strict.size() == 1);
    CHECK(strict[0].subjects == std::vector<Identifier>{"A2"});
    CHECK(strict[0].severity == Severity::Error);
    const auto lenient = with_code(validate(s, ValidationMode::Lenient), RuleCode::W7);
    REQUIRE(lenient.size() == 1);
    CHECK(lenient[0].severity == Severity::Warning);
    CHECK_FALSE(has_errors(validate(s, ValidationMode::Lenient)));
    // root assumptions need no discharge
    s = ex_structure();
    s.refinements.pop_back(); // r4
    CHECK(validate(s, ValidationMode::Strict).empty());
}

TEST_CASE("W8 cycle witness") {
    const auto ds = validate(ex_plus("refine r5: G4 -> A4;\n"));
    const auto w8 = with_code(ds, RuleCode::W8);
    REQUIRE(w8.size() == 1);
    CHECK(w8[0].subjects == std::vector<Identifier>{"A4", "G4", "A4"});
    CHECK(w8[0].message.find("A4 -> G4 -> A4") != std::string::npos);
}

TEST_CASE("W9 component without contracts") {
    const auto ds = validate(ex_plus("component Spare within Csys;\n"));
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == RuleCode::W9);
    CHECK(ds[0].severity == Severity::Warning);
    CHECK_FALSE(has_errors(ds));
}

TEST_CASE("diagnostics are sorted and deterministic") {
    const auto s = ex_plus("refine r5: G4 -> G1;\ncomponent Spare within Csys;\nrefine r6: G3 -> A5;\n");
    const auto a = validate(s);
    CHECK(a == validate(s));
    CHECK(std::is_sorted(a.begin(), a.end(), [](const Diagnostic& x, const Diagnostic& y) {
        return std::tie(x.code, x.subjects, x.message) < std::tie(y.code, y.subjects, y.message);
    }));
    const auto doc = json::parse_text(diagnostics_to_json(a));
    REQUIRE(doc.is_array());
    CHECK(doc.size() == a.size());
    CHECK(doc[0]["code"] == "W4");
    CHECK(doc[0]["severity"] == "error");
}

TEST_CASE("random structures validate cleanly under strict mode") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const auto s = testing::random_structure(rng);
        CHECK_FALSE(has_errors(validate(s, ValidationMode::Strict)));
    }
}

TEST_CASE("injected cycles are detected with a closed witness") {
    std::mt19937_64 rng(31337);
    int injected = 0;
    while (injected < 150) {
        auto s = testing::random_structure(rng);
        if (!with_code(validate(s), RuleCode::W8).empty()) FAIL("generator produced a cycle");
        testing::Injection inj;
        try {
            inj = testing::inject_cycle(rng, s);
        } catch (const std::invalid_argument&) {
            continue;
        }
        ++injected;
        const auto w8 = with_code(validate(s), RuleCode::W8);
        REQUIRE(w8.size() >= 1);
        const auto edges = testing::raw_edges(s);
        bool through_injection = false;
        for (const auto& d : w8) {
            const auto& cyc = d.subjects;
            REQUIRE(cyc.size() >= 2);
            CHECK(cyc.front() == cyc.back());
            CHECK(cyc.front() == *std::min_element(cyc.begin(), cyc.end()));
            for (std::size_t k = 0; k + 1 < cyc.size(); ++k) {
                const bool edge = std::any_of(edges.begin(), edges.end(), [&](const testing::RawEdge& e) {
                    return e.from == cyc[k] && e.to == cyc[k + 1];
                });
                CHECK_MESSAGE(edge, cyc[k] << " -> " << cyc[k + 1]);
            }
            if (std::find(cyc.begin(), cyc.end(), inj.target) != cyc.end()) through_injection = true;
        }
        CHECK(through_injection);
    }
}
