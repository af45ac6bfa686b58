#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matset/graph.hpp"

namespace matset {

/// An equivalence relation on the nodes of one graph. Block identifiers are
/// normalized to the smallest node index in the block, so two partitions are
/// equal exactly when they relate the same pairs.
class Partition {
 public:
  Partition() = default;

  /// Nodes with equal keys share a block. Keys are arbitrary.
  static Partition from_keys(const std::vector<std::size_t>& keys);

  std::size_t node_count() const noexcept { return block_of_.size(); }
  std::size_t block_count() const noexcept { return block_count_; }
  NodeId block_of(NodeId node) const { return block_of_.at(node); }
  bool same_block(NodeId a, NodeId b) const { return block_of_.at(a) == block_of_.at(b); }
  bool is_discrete() const noexcept { return block_count_ == block_of_.size(); }

  /// Blocks in ascending id order, members ascending.
  std::vector<std::vector<NodeId>> blocks() const;

  /// `block <id>: <node list>` lines.
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<NodeId> block_of_;
  std::size_t block_count_ = 0;
};

/// A total function between the node sets of two APGs, `map[source node]`.
struct SimMap {
  WfApg source;
  WfApg target;
  std::vector<NodeId> map;
};

struct SimCheck {
  enum class Clause { kNone, kForward, kLifting, kLabel };

  bool ok = true;
  Clause failed = Clause::kNone;
  /// kForward: (x', x) with x' ≺ x but map(x') ⊀ map(x).
  /// kLifting: (x, y) with y ≺ map(x) not hit by any child of x.
  /// kLabel:   (x, map(x)).
  std::optional<std::pair<NodeId, NodeId>> counterexample;

  explicit operator bool() const noexcept { return ok; }
};

/// Throws std::invalid_argument when the map is not total or leaves the
/// target's node range.
SimCheck is_simulation(const SimMap& f);

struct Relation {
  WfApg left;
  WfApg right;
  std::vector<std::pair<NodeId, NodeId>> pairs;
};

struct BisimCheck {
  bool is_bisimulation = true;
  /// Both projections surjective.
  bool bi_entire = true;
  /// A pair whose back-and-forth or label clause fails.
  std::optional<std::pair<NodeId, NodeId>> counterexample;
};

BisimCheck is_bisimulation(const Relation& r);

/// Largest bisimulation by plain fixpoint iteration: start from the
/// label-respecting partition and split on child-block sets until stable.
/// Kept as the testing oracle for `max_bisim_refine`.
Partition max_bisim_naive(const RawGraph& graph);

/// Largest bisimulation by relational coarsest partition refinement
/// (three-way splitting with per-block child counts), O(m log n).
Partition max_bisim_refine(const RawGraph& graph);

/// True iff the largest bisimulation is the identity.
bool is_extensional(const WfApg& apg);

struct Quotient {
  WfApg apg;
  /// The surjective quotient simulation.
  SimMap map;
};

/// Quotient by a bisimulation that is an equivalence relation. Quotient
/// nodes are numbered by ascending block id.
Quotient quotient_by(const WfApg& apg, const Partition& partition);

/// Extensional quotient: quotient by the largest bisimulation.
Quotient ext_quotient(const WfApg& apg);

class NotExtensionalError : public std::invalid_argument {
 public:
  enum class Side { kLeft, kRight };
  explicit NotExtensionalError(Side side);
  Side side() const noexcept { return side_; }

 private:
  Side side_;
};

/// The unique isomorphism between two extensional APGs, if any. Computed by
/// one refinement run on the disjoint union.
std::optional<SimMap> iso(const WfApg& x, const WfApg& y);

/// Tree of ≺-paths ending at the root; node 0 is the root (empty path).
/// Throws std::invalid_argument if some path is longer than `depth_limit`.
/// Output size is the number of root paths, exponential in the worst case.
WfApg unfold_to_tree(const WfApg& apg, std::size_t depth_limit);

}  // namespace matset
