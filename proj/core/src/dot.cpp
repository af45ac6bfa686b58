#include "matset/dot.hpp"

#include <sstream>

namespace matset {

namespace {

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string export_dot(const WfApg& apg) {
  const RawGraph& g = apg.graph();
  std::ostringstream out;
  out << "digraph apg {\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::string label = std::to_string(v);
    if (g.is_labeled(v)) label += " @" + *g.label(v);
    out << "  n" << v << " [label=" << quoted(label)
        << ", shape=" << (v == apg.root() ? "doublecircle" : "circle") << "];\n";
  }
  for (const Edge& e : g.edges()) out << "  n" << e.child << " -> n" << e.parent << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace matset
