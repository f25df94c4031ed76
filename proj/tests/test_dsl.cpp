#include "contractcase/dsl.hpp"
#include "contractcase/error.hpp"
#include "contractcase/json_codec.hpp"
#include "support/fixtures.hpp"
#include "support/generator.hpp"

#include <doctest.h>

using namespace contractcase;
using contractcase::testing::ex_structure;
using contractcase::testing::read_fixture;

namespace {

ParseResult parse_text(const std::string& s) { return parse(s, "t.cbd"); }

const ParseError& only_error(const ParseResult& r) {
    REQUIRE(r.errors.size() == 1);
    return r.errors.front();
}

} // namespace

TEST_CASE("the example parses into four components, four contracts, four refinements") {
    const auto r = parse_text(read_fixture("ex.cbd"));
    REQUIRE(r.ok());
    const auto& s = *r.structure;
    CHECK(s.components.size() == 4);
    CHECK(s.contracts.size() == 4);
    CHECK(s.refinements.size() == 4);
    CHECK(s.concerns.at("safety") == std::set<Identifier>{"G1"});
    const auto* c1 = s.find_component("C1");
    CHECK(c1->name == "C1");
    CHECK(c1->description.empty());
    CHECK(s.find_contract("K1")->assumptions.empty());
}

TEST_CASE("unexpected token reports line and column") {
    const auto r = parse_text("component A;\ncomponent B within ;\n");
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.structure.has_value());
    const auto& e = only_error(r);
    CHECK(e.code == ParseCode::UnexpectedToken);
    CHECK(e.span.line == 2);
    CHECK(e.span.column == 20);
    CHECK(format(e).rfind("t.cbd:2:20: E001: ", 0) == 0);
}

TEST_CASE("duplicate ids are reported at the second occurrence") {
    const auto r = parse_text("component A;\ncomponent A;\n");
    const auto& e = only_error(r);
    CHECK(e.code == ParseCode::DuplicateId);
    CHECK(e.span.line == 2);
    CHECK(e.span.column == 11);

    const auto specs = parse_text(
        "component A;\ncontract K for A { guarantee G: \"x\"; }\n"
        "contract L for A { assume G: \"y\"; guarantee H: \"z\"; }\n");
    CHECK(only_error(specs).code == ParseCode::DuplicateId);
    CHECK(only_error(specs).span.line == 3);
}

TEST_CASE("string literal errors") {
    CHECK(only_error(parse_text("component A; contract K for A { guarantee G: \"\"; }")).code ==
          ParseCode::MalformedString);
    CHECK(only_error(parse_text("component A; contract K for A { guarantee G: \"a\\nb\"; }")).code ==
          ParseCode::MalformedString);
    const auto r = parse_text("component A;\ncontract K for A { guarantee G: \"open");
    CHECK_FALSE(r.ok());
    CHECK(r.errors.front().code == ParseCode::MalformedString);
    CHECK(r.errors.front().span.line == 2);
}

TEST_CASE("escapes decode") {
    const auto r = parse_text("component A; contract K for A { guarantee G: \"say \\\"hi\\\" \\\\ ok\"; }");
    REQUIRE(r.ok());
    CHECK(r.structure->find_spec("G")->text == "say \"hi\" \\ ok");
}

TEST_CASE("columns count code points and CRLF is normalized") {
    const auto r = parse_text("component A;\r\ncontract K for A { guarantee G: \"déjà→\" ? }\r\n");
    const auto& e = only_error(r);
    CHECK(e.span.line == 2);
    // 'contract K for A { guarantee G: "déjà→" ' is 40 code points
    CHECK(e.span.column == 41);
    const auto cr = parse_text("component A;\rcomponent A;");
    CHECK(only_error(cr).span.line == 2);
}

TEST_CASE("comments and keywords as identifiers") {
    const auto r = parse_text(
        "# leading comment\ncomponent component; # trailing\n"
        "contract for for component { assume assume: \"a\"; guarantee guarantee: \"g\"; }\n");
    REQUIRE(r.ok());
    CHECK(r.structure->find_contract("for")->assumptions.front().id == "assume");
}

TEST_CASE("recovery reports several errors in source order") {
    const auto r = parse_text(
        "component A;\ncomponent ;\ncontract K for A { guarantee G \"x\"; }\ncomponent B within A;\n"
        "refine r1 A -> B;\n");
    REQUIRE(r.errors.size() == 3);
    CHECK(r.errors[0].span.line == 2);
    CHECK(r.errors[1].span.line == 3);
    CHECK(r.errors[2].span.line == 5);
    for (std::size_t i = 1; i < r.errors.size(); ++i)
        CHECK(std::tie(r.errors[i - 1].span.line, r.errors[i - 1].span.column) <=
              std::tie(r.errors[i].span.line, r.errors[i].span.column));
}

TEST_CASE("parse never loops on garbage") {
    for (const char* src : {"}}}}", ";;;", "contract", "refine r: ->", "\"", "{ { {", "concern c covers ;",
                            "component A within", "@#$%", "contract K for A { assume"}) {
        const auto r = parse_text(src);
        CHECK_FALSE(r.ok());
    }
    CHECK(parse_text("").ok());
    CHECK(parse_text("   \n# only a comment\n").ok());
}

TEST_CASE("unresolved names are left to the validator") {
    const auto r = parse_text("component A within Nowhere;\nrefine r: X -> Y;\n");
    REQUIRE(r.ok());
    CHECK(r.structure->refinements.size() == 1);
}

TEST_CASE("serialize emits the canonical layout") {
    const auto text = serialize(ex_structure());
    const std::string expected_head =
        "component Csys;\n"
        "component C1 within Csys;\n"
        "component C2 within Csys;\n"
        "component C3 within Csys;\n"
        "\n"
        "contract Ksys for Csys {\n"
        "  assume A1: \"The operator supplies valid commands\";\n"
        "  assume A5: \"Actuation requests reach the plant\";\n"
        "  guarantee G1: \"The plant stays within its safe envelope\";\n"
        "}\n";
    CHECK(text.rfind(expected_head, 0) == 0);
    CHECK(text.find("refine r1: A1 -> A2;\nrefine r2: G2 -> A3;\n") != std::string::npos);
    CHECK(text.find("concern actuation covers G4;\nconcern safety covers G1;\n") != std::string::npos);
}

TEST_CASE("serialize rejects dangling references") {
    auto s = ex_structure();
    s.refinements.push_back({"r9", "G9", "A1"});
    CHECK_THROWS_AS(serialize(s), ReferenceError);
}

TEST_CASE("round trip and fixpoint over random structures") {
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 250; ++i) {
        const auto s = contractcase::testing::random_structure(rng);
        const auto text = serialize(s);
        const auto r = parse(text);
        REQUIRE_MESSAGE(r.ok(), text);
        CHECK(structurally_equal(*r.structure, s));
        CHECK(serialize(*r.structure) == text);
    }
}

TEST_CASE("JSON structure documents round trip") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        const auto s = contractcase::testing::random_structure(rng);
        const auto text = to_json(s);
        CHECK(from_json(text) == s);
        CHECK(to_json(from_json(text)) == text);
    }
    const auto doc = json::parse_text(to_json(ex_structure()));
    CHECK(doc.begin().key() == "schema_version");
    CHECK(doc["schema_version"] == "1");
    CHECK(doc["document"] == "structure");
}

TEST_CASE("JSON schema violations") {
    CHECK_THROWS_AS(from_json("{"), SchemaError);
    CHECK_THROWS_AS(from_json("{\"document\":\"structure\"}"), SchemaError);
    CHECK_THROWS_AS(from_json("{\"schema_version\":\"2\",\"document\":\"structure\",\"structure\":{}}"),
                    SchemaError);
    CHECK_THROWS_AS(from_json("{\"schema_version\":\"1\",\"document\":\"case\"}"), SchemaError);
    auto doc = json::parse_text(to_json(ex_structure()));
    doc["structure"]["components"][0]["id"] = "not an id";
    CHECK_THROWS_AS(from_json(doc.dump()), SchemaError);
    try {
        from_json("{\"document\":\"structure\"}");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("schema_version") != std::string::npos);
    }
}
