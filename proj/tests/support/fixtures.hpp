#pragma once

#include "contractcase/argument.hpp"
#include "contractcase/persist.hpp"

#include <string>

namespace contractcase::testing {

std::string fixture_path(const std::string& name);
std::string read_fixture(const std::string& name);

// The four-component example: Csys with children C1..C3, refinements r1..r4.
SpecificationStructure ex_structure();
SpecificationStructure ex_g4edit_structure();
AssuranceCase ex_case();
FragmentSet ex_fragments();
// Every module developed with trusted evidence; M_Csys/A1 is the only axiom.
AssuranceCase ex_developed_case();

// Fragment set for the example with `edit` applied to each fragment.
template <class F>
AssuranceCase ex_developed_case_with(F&& edit) {
    auto set = ex_fragments();
    edit(set);
    return apply_fragments(ex_case(), set);
}

SpecificationStructure parse_or_throw(const std::string& source);

} // namespace contractcase::testing
