#pragma once

#include <string>

#include "matset/graph.hpp"

namespace matset {

/// Graphviz digraph of `apg`: one node per index, the root double-circled,
/// an edge child -> parent per membership, atoms shown with their label.
/// Equal inputs give byte-identical output.
std::string export_dot(const WfApg& apg);

}  // namespace matset
