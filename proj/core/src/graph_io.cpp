#include "matset/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace matset {
namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

[[noreturn]] void syntax(std::size_t line, const std::string& message) {
  throw SyntaxError(line, "line " + std::to_string(line) + ": " + message);
}

NodeId parse_index(std::string_view word, std::size_t line) {
  NodeId value = 0;
  const char* end = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(word.data(), end, value);
  if (ec != std::errc{} || ptr != end || word.empty() || word[0] == '+' || word[0] == '-') {
    syntax(line, "expected a decimal index, got '" + std::string(word) + "'");
  }
  return value;
}

}  // namespace

GraphFile parse_graph(std::string_view text) {
  enum class Section { kHeader, kEdges, kAtoms };
  Section section = Section::kHeader;
  GraphFile out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;

    const std::string_view kw = words[0];
    if (section == Section::kHeader) {
      if (kw != "apg" || words.size() != 3) syntax(line_no, "expected 'apg <node_count> <root>'");
      out.graph = RawGraph(parse_index(words[1], line_no));
      out.root = parse_index(words[2], line_no);
      section = Section::kEdges;
    } else if (kw == "edge") {
      if (section != Section::kEdges) syntax(line_no, "'edge' after 'atom' lines");
      if (words.size() != 3) syntax(line_no, "expected 'edge <child> <parent>'");
      try {
        out.graph.add_edge(parse_index(words[1], line_no), parse_index(words[2], line_no));
      } catch (const GraphError& e) {
        syntax(line_no, e.what());
      }
    } else if (kw == "atom") {
      if (words.size() != 3) syntax(line_no, "expected 'atom <node> <atom-name>'");
      section = Section::kAtoms;
      NodeId node = parse_index(words[1], line_no);
      if (node >= out.graph.node_count()) syntax(line_no, "atom node out of range");
      out.graph.set_label(node, std::string(words[2]));
    } else {
      syntax(line_no, "unknown directive '" + std::string(kw) + "'");
    }
  }
  if (section == Section::kHeader) syntax(line_no, "missing 'apg' header");
  return out;
}

GraphFile read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const RawGraph& graph, NodeId root) {
  std::ostringstream out;
  out << "apg " << graph.node_count() << ' ' << root << '\n';
  for (const Edge& e : graph.edges()) out << "edge " << e.child << ' ' << e.parent << '\n';
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    if (graph.is_labeled(v)) out << "atom " << v << ' ' << *graph.label(v) << '\n';
  }
  return out.str();
}

std::string format_graph(const WfApg& apg) { return format_graph(apg.graph(), apg.root()); }

}  // namespace matset
