#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace matset {

/// Dense node index, 0..node_count-1.
using NodeId = std::uint32_t;

/// `child ≺ parent`: the child depicts a member of the set depicted by the parent.
struct Edge {
  NodeId child;
  NodeId parent;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class GraphErrc {
  kRootOutOfRange,
  kNodeOutOfRange,
  kDuplicateEdge,
  kCycleFound,
  kInaccessible,
  kLabeledNonLeaf,
  kEmptySubset,
};

const char* to_string(GraphErrc code);

/// Raised by graph construction and validation. `nodes()` carries the
/// witness: the cycle for kCycleFound (first node repeated at the end), the
/// unreachable nodes for kInaccessible, the offending node otherwise.
class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, std::vector<NodeId> nodes, const std::string& what);

  GraphErrc code() const noexcept { return code_; }
  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }

 private:
  GraphErrc code_;
  std::vector<NodeId> nodes_;
};

/// A finite graph with child relation and optional atom labels. No
/// structural guarantees beyond index ranges and edge uniqueness; see
/// `validate` for the well-founded accessible pointed form.
class RawGraph {
 public:
  RawGraph() = default;
  explicit RawGraph(std::size_t node_count);

  static RawGraph from_edges(std::size_t node_count, std::span<const Edge> edges);

  NodeId add_node();
  /// Throws kNodeOutOfRange or kDuplicateEdge.
  void add_edge(NodeId child, NodeId parent);
  void set_label(NodeId node, std::string atom);

  std::size_t node_count() const noexcept { return children_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Ascending.
  std::span<const NodeId> children(NodeId node) const { return children_.at(node); }
  /// Ascending.
  std::span<const NodeId> parents(NodeId node) const { return parents_.at(node); }
  bool has_edge(NodeId child, NodeId parent) const;

  bool is_labeled(NodeId node) const { return labels_.at(node).has_value(); }
  const std::optional<std::string>& label(NodeId node) const { return labels_.at(node); }
  bool has_labels() const noexcept { return labeled_count_ > 0; }

  /// All edges ordered by (child, parent).
  std::vector<Edge> edges() const;

  friend bool operator==(const RawGraph&, const RawGraph&) = default;

 private:
  void check_node(NodeId node) const;

  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<std::optional<std::string>> labels_;
  std::size_t edge_count_ = 0;
  std::size_t labeled_count_ = 0;
};

/// Some directed cycle as a node path `x, ..., x` (each step goes from a
/// parent to one of its children), or nullopt when the graph is acyclic.
std::optional<std::vector<NodeId>> find_cycle(const RawGraph& graph);

inline bool is_acyclic(const RawGraph& graph) { return !find_cycle(graph).has_value(); }

/// Children before parents. Throws kCycleFound on cyclic input.
std::vector<NodeId> topological_order(const RawGraph& graph);

/// Nodes admitting a ≺-path (possibly empty) to `target`, ascending.
std::vector<NodeId> nodes_reaching(const RawGraph& graph, NodeId target);

/// A validated well-founded accessible pointed graph. Immutable; copies
/// share the underlying graph.
class WfApg {
 public:
  const RawGraph& graph() const noexcept { return *graph_; }
  NodeId root() const noexcept { return root_; }
  std::size_t node_count() const noexcept { return graph_->node_count(); }
  std::size_t edge_count() const noexcept { return graph_->edge_count(); }
  std::span<const NodeId> children(NodeId node) const { return graph_->children(node); }
  bool is_labeled(NodeId node) const { return graph_->is_labeled(node); }
  const std::optional<std::string>& label(NodeId node) const { return graph_->label(node); }

  /// Structural identity of presentations (same indices, edges, labels, root).
  friend bool operator==(const WfApg& a, const WfApg& b) {
    return a.root_ == b.root_ && (a.graph_ == b.graph_ || *a.graph_ == *b.graph_);
  }

 private:
  friend WfApg validate(RawGraph raw, NodeId root);
  friend struct WfApgAccess;
  WfApg(std::shared_ptr<const RawGraph> graph, NodeId root)
      : graph_(std::move(graph)), root_(root) {}

  std::shared_ptr<const RawGraph> graph_;
  NodeId root_ = 0;
};

/// Checks root range, leaf-only labels, acyclicity and accessibility, in that
/// order, and throws the first violation as a GraphError.
WfApg validate(RawGraph raw, NodeId root);

/// An induced subgraph together with the original index of every node.
struct Induced {
  RawGraph graph;
  NodeId root = 0;
  std::vector<NodeId> origin;
};

/// Drops the nodes that have no path to `root`; kept nodes keep their
/// relative order.
Induced restrict_accessible(const RawGraph& raw, NodeId root);

struct SubApg {
  WfApg apg;
  std::vector<NodeId> origin;
};

/// X/x together with its inclusion into X.
SubApg subgraph_with_origin(const WfApg& apg, NodeId node);

/// X/x: the full subgraph of nodes with a path to `node`, rooted there.
WfApg subgraph_at(const WfApg& apg, NodeId node);

/// A set of nodes of one graph. Holds a pointer to the graph, which must
/// outlive the subset.
class NodeSubset {
 public:
  NodeSubset(const RawGraph& graph, std::vector<NodeId> members);

  const RawGraph& graph() const noexcept { return *graph_; }
  std::span<const NodeId> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeId node) const { return node < mask_.size() && mask_[node]; }

 private:
  const RawGraph* graph_;
  std::vector<NodeId> members_;
  std::vector<bool> mask_;
};

/// X⫽⋆: nodes admitting a path of positive length to the root.
NodeSubset strict_part(const WfApg& apg);

/// Children of the root, ascending.
std::vector<NodeId> members(const WfApg& apg);

/// A node of `subset` none of whose children lie in `subset`, found by a
/// linear scan; nullopt if every member has a child inside. Throws
/// kEmptySubset on an empty subset.
std::optional<NodeId> has_minimal_element(const NodeSubset& subset);

}  // namespace matset
