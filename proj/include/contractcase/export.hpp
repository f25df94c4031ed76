#pragma once

// Deterministic renderers. DOT edges point from premises to conclusions, the
// direction of reasoning, which is the reverse of the GSN standard.
//
//   component module     shape=tab
//   refinement module    shape=component
//   claim                shape=box
//   strategy             shape=parallelogram
//   justification        shape=ellipse, label suffix " (J)"
//   context              shape=box, style=rounded
//   evidence             shape=circle

#include "contractcase/argument.hpp"

#include <optional>
#include <set>
#include <string>

namespace contractcase {

enum class View { Architecture, Argument, SpecGraph };

std::optional<View> parse_view(std::string_view text) noexcept;

struct RenderOptions {
    View view = View::Architecture;
    std::optional<std::set<Identifier>> module_filter;
    bool include_status = false;
};

std::string to_dot_architecture(const AssuranceArchitecture& architecture);
// Module clusters; bindings are drawn when both ends are rendered. Throws
// Error when the filter names an unknown module.
std::string to_dot_argument(const AssuranceCase& c, const RenderOptions& options);
std::string to_dot_specgraph(const SpecificationStructure& structure);

// Dispatches on options.view.
std::string render(const AssuranceCase& c, const RenderOptions& options);

std::string to_report(const AssuranceCase& c);

} // namespace contractcase
