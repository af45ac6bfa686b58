#include "matset/graph.hpp"

#include <algorithm>
#include <sstream>

#include "internal.hpp"

namespace matset {
namespace {

std::string describe(GraphErrc code, const std::vector<NodeId>& nodes) {
  std::ostringstream out;
  out << to_string(code);
  if (!nodes.empty()) {
    out << ":";
    for (NodeId n : nodes) out << ' ' << n;
  }
  return out.str();
}

[[noreturn]] void fail(GraphErrc code, std::vector<NodeId> nodes) {
  std::string what = describe(code, nodes);
  throw GraphError(code, std::move(nodes), what);
}

bool insert_sorted(std::vector<NodeId>& list, NodeId value) {
  auto it = std::lower_bound(list.begin(), list.end(), value);
  if (it != list.end() && *it == value) return false;
  list.insert(it, value);
  return true;
}

}  // namespace

const char* to_string(GraphErrc code) {
  switch (code) {
    case GraphErrc::kRootOutOfRange: return "RootOutOfRange";
    case GraphErrc::kNodeOutOfRange: return "NodeOutOfRange";
    case GraphErrc::kDuplicateEdge: return "DuplicateEdge";
    case GraphErrc::kCycleFound: return "CycleFound";
    case GraphErrc::kInaccessible: return "Inaccessible";
    case GraphErrc::kLabeledNonLeaf: return "LabeledNonLeaf";
    case GraphErrc::kEmptySubset: return "EmptySubset";
  }
  return "GraphError";
}

GraphError::GraphError(GraphErrc code, std::vector<NodeId> nodes, const std::string& what)
    : std::runtime_error(what), code_(code), nodes_(std::move(nodes)) {}

RawGraph::RawGraph(std::size_t node_count)
    : children_(node_count), parents_(node_count), labels_(node_count) {}

RawGraph RawGraph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  RawGraph g(node_count);
  for (const Edge& e : edges) {
    g.check_node(e.child);
    g.check_node(e.parent);
    g.children_[e.parent].push_back(e.child);
    g.parents_[e.child].push_back(e.parent);
  }
  for (NodeId v = 0; v < node_count; ++v) {
    auto& kids = g.children_[v];
    std::sort(kids.begin(), kids.end());
    if (auto dup = std::adjacent_find(kids.begin(), kids.end()); dup != kids.end()) {
      fail(GraphErrc::kDuplicateEdge, {*dup, v});
    }
    std::sort(g.parents_[v].begin(), g.parents_[v].end());
  }
  g.edge_count_ = edges.size();
  return g;
}

NodeId RawGraph::add_node() {
  children_.emplace_back();
  parents_.emplace_back();
  labels_.emplace_back();
  return static_cast<NodeId>(children_.size() - 1);
}

void RawGraph::check_node(NodeId node) const {
  if (node >= children_.size()) fail(GraphErrc::kNodeOutOfRange, {node});
}

void RawGraph::add_edge(NodeId child, NodeId parent) {
  check_node(child);
  check_node(parent);
  if (!insert_sorted(children_[parent], child)) fail(GraphErrc::kDuplicateEdge, {child, parent});
  insert_sorted(parents_[child], parent);
  ++edge_count_;
}

void RawGraph::set_label(NodeId node, std::string atom) {
  check_node(node);
  if (!labels_[node]) ++labeled_count_;
  labels_[node] = std::move(atom);
}

bool RawGraph::has_edge(NodeId child, NodeId parent) const {
  const auto& kids = children_.at(parent);
  return std::binary_search(kids.begin(), kids.end(), child);
}

std::vector<Edge> RawGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId c = 0; c < parents_.size(); ++c) {
    for (NodeId p : parents_[c]) out.push_back({c, p});
  }
  return out;
}

std::optional<std::vector<NodeId>> find_cycle(const RawGraph& graph) {
  // Iterative DFS along parent -> child steps; a grey hit closes a cycle.
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  const std::size_t n = graph.node_count();
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<std::pair<NodeId, std::size_t>> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (color[start] != kWhite) continue;
    stack.push_back({start, 0});
    color[start] = kGrey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      auto kids = graph.children(node);
      if (next == kids.size()) {
        color[node] = kBlack;
        stack.pop_back();
        continue;
      }
      NodeId child = kids[next++];
      if (color[child] == kGrey) {
        std::vector<NodeId> path;
        auto it = std::find_if(stack.begin(), stack.end(),
                               [child](const auto& frame) { return frame.first == child; });
        for (; it != stack.end(); ++it) path.push_back(it->first);
        path.push_back(child);
        return path;
      }
      if (color[child] == kWhite) {
        color[child] = kGrey;
        stack.push_back({child, 0});
      }
    }
  }
  return std::nullopt;
}

std::vector<NodeId> topological_order(const RawGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> pending(n);
  std::vector<NodeId> order;
  order.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    pending[v] = graph.children(v).size();
    if (pending[v] == 0) order.push_back(v);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId p : graph.parents(order[head])) {
      if (--pending[p] == 0) order.push_back(p);
    }
  }
  if (order.size() != n) fail(GraphErrc::kCycleFound, *find_cycle(graph));
  return order;
}

std::vector<NodeId> nodes_reaching(const RawGraph& graph, NodeId target) {
  if (target >= graph.node_count()) fail(GraphErrc::kNodeOutOfRange, {target});
  std::vector<bool> seen(graph.node_count(), false);
  std::vector<NodeId> queue{target};
  seen[target] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (NodeId c : graph.children(queue[head])) {
      if (!seen[c]) {
        seen[c] = true;
        queue.push_back(c);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

WfApg validate(RawGraph raw, NodeId root) {
  if (root >= raw.node_count()) fail(GraphErrc::kRootOutOfRange, {root});
  for (NodeId v = 0; v < raw.node_count(); ++v) {
    if (raw.is_labeled(v) && !raw.children(v).empty()) fail(GraphErrc::kLabeledNonLeaf, {v});
  }
  if (auto cycle = find_cycle(raw)) fail(GraphErrc::kCycleFound, std::move(*cycle));
  auto reach = nodes_reaching(raw, root);
  if (reach.size() != raw.node_count()) {
    std::vector<NodeId> missing;
    std::size_t i = 0;
    for (NodeId v = 0; v < raw.node_count(); ++v) {
      if (i < reach.size() && reach[i] == v) {
        ++i;
      } else {
        missing.push_back(v);
      }
    }
    fail(GraphErrc::kInaccessible, std::move(missing));
  }
  return WfApg(std::make_shared<const RawGraph>(std::move(raw)), root);
}

namespace {

Induced induce(const RawGraph& raw, std::vector<NodeId> kept, NodeId root) {
  constexpr NodeId kDropped = ~NodeId{0};
  std::vector<NodeId> renumber(raw.node_count(), kDropped);
  for (NodeId i = 0; i < kept.size(); ++i) renumber[kept[i]] = i;
  Induced out{RawGraph(kept.size()), renumber[root], std::move(kept)};
  for (NodeId i = 0; i < out.origin.size(); ++i) {
    NodeId old = out.origin[i];
    for (NodeId c : raw.children(old)) {
      if (renumber[c] != kDropped) out.graph.add_edge(renumber[c], i);
    }
    if (raw.is_labeled(old)) out.graph.set_label(i, *raw.label(old));
  }
  return out;
}

}  // namespace

Induced restrict_accessible(const RawGraph& raw, NodeId root) {
  if (root >= raw.node_count()) fail(GraphErrc::kRootOutOfRange, {root});
  return induce(raw, nodes_reaching(raw, root), root);
}

SubApg subgraph_with_origin(const WfApg& apg, NodeId node) {
  Induced sub = restrict_accessible(apg.graph(), node);
  return {WfApgAccess::make(std::move(sub.graph), sub.root), std::move(sub.origin)};
}

WfApg subgraph_at(const WfApg& apg, NodeId node) { return subgraph_with_origin(apg, node).apg; }

NodeSubset::NodeSubset(const RawGraph& graph, std::vector<NodeId> members)
    : graph_(&graph), members_(std::move(members)), mask_(graph.node_count(), false) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (NodeId v : members_) {
    if (v >= graph.node_count()) fail(GraphErrc::kNodeOutOfRange, {v});
    mask_[v] = true;
  }
}

NodeSubset strict_part(const WfApg& apg) {
  const RawGraph& g = apg.graph();
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> queue;
  for (NodeId c : g.children(apg.root())) {
    if (!seen[c]) {
      seen[c] = true;
      queue.push_back(c);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (NodeId c : g.children(queue[head])) {
      if (!seen[c]) {
        seen[c] = true;
        queue.push_back(c);
      }
    }
  }
  return NodeSubset(g, std::move(queue));
}

std::vector<NodeId> members(const WfApg& apg) {
  auto kids = apg.children(apg.root());
  return {kids.begin(), kids.end()};
}

std::optional<NodeId> has_minimal_element(const NodeSubset& subset) {
  if (subset.empty()) fail(GraphErrc::kEmptySubset, {});
  for (NodeId x : subset.members()) {
    auto kids = subset.graph().children(x);
    if (std::none_of(kids.begin(), kids.end(), [&](NodeId y) { return subset.contains(y); })) {
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace matset
