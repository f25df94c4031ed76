#pragma once

// Minimal recursive-descent checker for the Graphviz DOT grammar subset:
// graph headers, node/edge/attribute statements, ID=ID, nested subgraphs,
// quoted, numeral and keyword-free bare IDs, and attribute lists.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace contractcase::testing {

struct DotEdge {
    std::string from, to;
    std::map<std::string, std::string> attrs;
};

struct DotSummary {
    bool directed = false;
    std::string name;
    std::map<std::string, std::map<std::string, std::string>> nodes; // declared nodes
    std::vector<DotEdge> edges;
    std::vector<std::string> subgraphs;
};

struct DotResult {
    std::optional<DotSummary> graph;
    std::string error; // set when graph is empty
};

DotResult check_dot(const std::string& text);

} // namespace contractcase::testing
