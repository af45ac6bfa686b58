#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "matset/graph.hpp"
#include "matset/syntax_error.hpp"

namespace matset {

/// Line-based text form:
///
///   apg <node_count> <root>
///   edge <child> <parent>      (zero or more)
///   atom <node> <atom-name>    (zero or more, after all edges)
///
/// '#' starts a comment that runs to the end of the line.
struct GraphFile {
  RawGraph graph;
  NodeId root = 0;
};

/// Throws SyntaxError with the 1-based line number as position.
GraphFile parse_graph(std::string_view text);
GraphFile read_graph_file(const std::filesystem::path& path);

std::string format_graph(const RawGraph& graph, NodeId root);
std::string format_graph(const WfApg& apg);

}  // namespace matset
