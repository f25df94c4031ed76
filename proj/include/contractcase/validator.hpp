#pragma once

// Well-formedness rules for specification structures.
//
//   W1  unresolved reference, or duplicate id within an element kind
//   W2  component parent relation is not a single-rooted tree
//   W3  specification id declared by more than one contract
//   W4  refinement target is not an assumption
//   W5  refinement matches none of the three dependency kinds
//   W6  assumption targeted by more than one refinement
//   W7  non-root assumption discharged by no refinement (error in strict mode)
//   W8  cycle in the assumption-of / refinement-of graph
//   W9  component with no allocated contract (warning)

#include "contractcase/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace contractcase {

enum class RuleCode { W1 = 1, W2, W3, W4, W5, W6, W7, W8, W9 };
enum class Severity { Error, Warning };
enum class ValidationMode { Strict, Lenient };

std::string_view to_string(RuleCode code) noexcept;
std::string_view to_string(Severity severity) noexcept;

struct Diagnostic {
    RuleCode code = RuleCode::W1;
    Severity severity = Severity::Error;
    // Ids involved; for W8 the witness cycle, closed (first id repeated last).
    std::vector<Identifier> subjects;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

// Ordered by (code, subjects, message).
std::vector<Diagnostic> validate(const SpecificationStructure& structure,
                                 ValidationMode mode = ValidationMode::Strict);

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept;

// "W4 error: refinement r5 targets guarantee G1; ..."
std::string format(const Diagnostic& diagnostic, bool color = false);

// JSON array of {code, severity, subjects, message}.
std::string diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);

} // namespace contractcase
