#include "fixtures.hpp"

#include "contractcase/dsl.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace contractcase::testing {

std::string fixture_path(const std::string& name) {
    return std::string(CONTRACTCASE_FIXTURES_DIR) + "/" + name;
}

std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpecificationStructure parse_or_throw(const std::string& source) {
    auto r = parse(source);
    if (!r.ok()) throw std::runtime_error("fixture does not parse: " + format(r.errors.front()));
    return *r.structure;
}

SpecificationStructure ex_structure() { return parse_or_throw(read_fixture("ex.cbd")); }

SpecificationStructure ex_g4edit_structure() {
    return parse_or_throw(read_fixture("ex_g4edit.cbd"));
}

AssuranceCase ex_case() {
    static const auto c = AssuranceCase::from_structure(ex_structure(), ValidationMode::Strict);
    return c;
}

FragmentSet ex_fragments() {
    static const auto set = fragments_from_json(read_fixture("ex_developed.json"));
    return set;
}

AssuranceCase ex_developed_case() {
    static const auto c = apply_fragments(ex_case(), ex_fragments());
    return c;
}

} // namespace contractcase::testing
