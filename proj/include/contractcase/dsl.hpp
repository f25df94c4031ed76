#pragma once

// Text front-end for specification structures (.cbd files).
//
//   structure   := item* ;
//   item        := component | contract | refinement | concern ;
//   component   := "component" IDENT ["within" IDENT] ";" ;
//   contract    := "contract" IDENT "for" IDENT "{" assume* guarantee "}" ;
//   assume      := "assume" IDENT ":" STRING ";" ;
//   guarantee   := "guarantee" IDENT ":" STRING ";" ;
//   refinement  := "refine" IDENT ":" IDENT "->" IDENT ";" ;
//   concern     := "concern" IDENT "covers" IDENT {"," IDENT} ";" ;
//
// "#" starts a comment running to end of line. Strings are double-quoted with
// \" and \\ escapes.

#include "contractcase/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contractcase {

struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;
    int length = 1;

    bool operator==(const SourceSpan&) const = default;
};

enum class ParseCode {
    UnexpectedToken,    // E001
    DuplicateId,        // E002
    UnresolvedDeferred, // E003, reported by the validator as W1
    MalformedString,    // E004
};

std::string_view code_name(ParseCode code) noexcept;

struct ParseError {
    SourceSpan span;
    ParseCode code = ParseCode::UnexpectedToken;
    std::string message;
};

// "file:line:column: E001: message"
std::string format(const ParseError& error);

struct ParseResult {
    std::optional<SpecificationStructure> structure;
    std::vector<ParseError> errors;

    bool ok() const noexcept { return structure.has_value(); }
};

ParseResult parse(std::string_view source, std::string file = "<input>");

// Canonical text. Throws ReferenceError when the structure does not resolve.
std::string serialize(const SpecificationStructure& structure);

// JSON document with "schema_version": "1". from_json throws SchemaError.
std::string to_json(const SpecificationStructure& structure);
SpecificationStructure from_json(std::string_view text);

} // namespace contractcase
