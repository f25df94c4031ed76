#include "contractcase/error.hpp"
#include "contractcase/model.hpp"
#include "support/fixtures.hpp"
#include "support/generator.hpp"

#include <doctest.h>

#include <openssl/evp.h>

using namespace contractcase;
using contractcase::testing::ex_structure;

namespace {

// Independent digest for the hash oracle.
std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

} // namespace

TEST_CASE("identifiers") {
    CHECK(is_identifier("A1"));
    CHECK(is_identifier("_x9"));
    CHECK_FALSE(is_identifier(""));
    CHECK_FALSE(is_identifier("9a"));
    CHECK_FALSE(is_identifier("a-b"));
    CHECK_FALSE(is_identifier("é"));
}

TEST_CASE("lookups on the example") {
    const auto s = ex_structure();
    REQUIRE(s.find_component("C2"));
    CHECK(*s.find_component("C2")->parent == "Csys");
    CHECK(s.find_component("C9") == nullptr);
    CHECK(s.find_contract("K2")->assumptions.size() == 2);
    CHECK(s.find_refinement("r3")->target == "A4");
    CHECK(s.find_spec("G4")->kind == SpecKind::Guarantee);
    CHECK(s.find_spec("A5")->kind == SpecKind::Assumption);
    CHECK(s.roots() == std::vector<Identifier>{"Csys"});
    CHECK(s.children_of("Csys") == std::vector<Identifier>{"C1", "C2", "C3"});
    CHECK(s.preorder() == std::vector<Identifier>{"Csys", "C1", "C2", "C3"});
    CHECK(s.contracts_of("C3").size() == 1);
}

TEST_CASE("preorder keeps children in declaration order and appends orphans") {
    SpecificationStructure s;
    s.components = {{"B", "R", "B", ""}, {"R", std::nullopt, "R", ""}, {"A", "R", "A", ""},
                    {"X", "B", "X", ""}, {"Z", "nowhere", "Z", ""}};
    CHECK(s.preorder() == std::vector<Identifier>{"R", "B", "X", "A", "Z"});
}

TEST_CASE("specification graph of the example") {
    const auto g = build_graph(ex_structure());
    CHECK(g.nodes.size() == 9);
    CHECK(g.count(EdgeKind::AssumptionOf) == 5);
    CHECK(g.count(EdgeKind::RefinementOf) == 4);
    const auto in = g.incoming("A4");
    REQUIRE(in.size() == 1);
    CHECK(in[0]->from == "G3");
    CHECK(in[0]->via == "r3");
    const auto g1 = g.incoming("G1");
    CHECK(g1.size() == 2);
}

TEST_CASE("build_graph rejects dangling references") {
    auto s = ex_structure();
    s.refinements.push_back({"r9", "G2", "A99"});
    CHECK_THROWS_AS(build_graph(s), ReferenceError);
    s = ex_structure();
    s.contracts[0].component = "Ghost";
    CHECK_THROWS_AS(build_graph(s), ReferenceError);
}

TEST_CASE("ownership and dependency kinds") {
    const auto s = ex_structure();
    CHECK(owner_of(s, "A3") == Owner{"K2", "C2"});
    CHECK_THROWS_AS(owner_of(s, "nope"), ReferenceError);
    CHECK(dependency_kind(s, *s.find_refinement("r1")) ==
          DependencyKind::ParentAssumptionToChildAssumption);
    CHECK(dependency_kind(s, *s.find_refinement("r2")) ==
          DependencyKind::SiblingGuaranteeToSiblingAssumption);
    CHECK(dependency_kind(s, *s.find_refinement("r3")) ==
          DependencyKind::SiblingGuaranteeToSiblingAssumption);
    CHECK(dependency_kind(s, *s.find_refinement("r4")) ==
          DependencyKind::ChildGuaranteeToParentAssumption);
    CHECK(dependency_kind(s, {"rx", "A2", "A1"}) == DependencyKind::Illegal);
    CHECK(dependency_kind(s, {"ry", "G1", "A2"}) == DependencyKind::Illegal);
}

TEST_CASE("canonicalization ignores declaration order only") {
    auto s = ex_structure();
    auto t = s;
    std::rotate(t.components.begin(), t.components.begin() + 1, t.components.end());
    std::reverse(t.contracts.begin(), t.contracts.end());
    std::reverse(t.refinements.begin(), t.refinements.end());
    CHECK(structurally_equal(s, t));
    CHECK(canonicalized(t) == canonicalized(s));
    CHECK(canonicalized(canonicalized(t)) == canonicalized(t));
    auto siblings = t;
    std::reverse(siblings.components.begin(), siblings.components.end());
    CHECK_FALSE(structurally_equal(s, siblings));
    CHECK(canonicalized(siblings).components.at(1).id == "C3");
    for (auto& k : t.contracts)
        if (k.id == "K2") std::swap(k.assumptions[0], k.assumptions[1]);
    CHECK_FALSE(structurally_equal(s, t));
}

TEST_CASE("combined hash matches a length-prefixed SHA-256") {
    // Oracle encoding: decimal byte length, ':', the bytes, ';' per field.
    CHECK(combined_hash({}) == sha256_hex(""));
    CHECK(combined_hash({"ab", "c"}) == sha256_hex("2:ab;1:c;"));
    CHECK(combined_hash({"日"}) == sha256_hex("3:日;"));
    CHECK(combined_hash({"a", "bc"}) != combined_hash({"ab", "c"}));
    CHECK(combined_hash({"x"}).size() == 64);
}

TEST_CASE("content hashes react to every covered field") {
    const auto s = ex_structure();
    const auto& k3 = *s.find_contract("K3");
    const auto base = content_hash(k3);
    CHECK(base == content_hash(k3));
    auto edited = k3;
    edited.guarantee.text += ".";
    CHECK(content_hash(edited) != base);
    edited = k3;
    edited.assumptions[0].id = "A44";
    CHECK(content_hash(edited) != base);
    edited = k3;
    edited.component = "C2";
    CHECK(content_hash(edited) != base);

    auto s2 = s;
    for (auto& k : s2.contracts)
        if (k.id == "K3") k.guarantee.text += "!";
    CHECK(content_hash(s2, *s2.find_refinement("r4")) != content_hash(s, *s.find_refinement("r4")));
    CHECK(content_hash(s2, *s2.find_refinement("r3")) == content_hash(s, *s.find_refinement("r3")));
    CHECK(content_hash(s2, *s2.find_refinement("r1")) == content_hash(s, *s.find_refinement("r1")));
    CHECK(content_hash(s2, *s2.find_component("C3")) != content_hash(s, *s.find_component("C3")));
    CHECK(content_hash(s2, *s2.find_component("C2")) == content_hash(s, *s.find_component("C2")));
    CHECK(content_hash(*s.find_spec("A1")) != content_hash(*s.find_spec("A2")));
}

TEST_CASE("content hashes are independent of declaration order") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto s = contractcase::testing::random_structure(rng);
        const auto c = canonicalized(s);
        for (const auto& comp : s.components)
            CHECK(content_hash(s, comp) == content_hash(c, *c.find_component(comp.id)));
        for (const auto& r : s.refinements)
            CHECK(content_hash(s, r) == content_hash(c, *c.find_refinement(r.id)));
    }
}

TEST_CASE("generated structures respect the limits") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto s = contractcase::testing::random_structure(rng);
        CHECK(s.components.size() <= 10);
        std::size_t specs = 0;
        for (const auto& k : s.contracts) specs += 1 + k.assumptions.size();
        CHECK(specs <= 25);
        CHECK(s.roots().size() == 1);
    }
}
