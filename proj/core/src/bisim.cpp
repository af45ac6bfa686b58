#include "matset/bisim.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "internal.hpp"

namespace matset {

Partition Partition::from_keys(const std::vector<std::size_t>& keys) {
  Partition p;
  p.block_of_.resize(keys.size());
  std::unordered_map<std::size_t, NodeId> first;
  first.reserve(keys.size());
  for (NodeId v = 0; v < keys.size(); ++v) {
    auto [it, inserted] = first.try_emplace(keys[v], v);
    p.block_of_[v] = it->second;
  }
  p.block_count_ = first.size();
  return p;
}

std::vector<std::vector<NodeId>> Partition::blocks() const {
  std::vector<std::vector<NodeId>> out;
  std::vector<std::size_t> slot(block_of_.size());
  for (NodeId v = 0; v < block_of_.size(); ++v) {
    if (block_of_[v] == v) {
      slot[v] = out.size();
      out.emplace_back();
    }
    out[slot[block_of_[v]]].push_back(v);
  }
  return out;
}

std::string Partition::to_string() const {
  std::ostringstream out;
  for (const auto& block : blocks()) {
    out << "block " << block.front() << ':';
    for (NodeId v : block) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

namespace {

/// 0 for unlabeled nodes, 1 + rank of the label otherwise.
std::vector<std::size_t> label_keys(const RawGraph& g) {
  std::vector<std::size_t> keys(g.node_count(), 0);
  if (!g.has_labels()) return keys;
  std::map<std::string, std::size_t> ids;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.is_labeled(v)) ids.emplace(*g.label(v), 0);
  }
  std::size_t next = 1;
  for (auto& [name, id] : ids) id = next++;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.is_labeled(v)) keys[v] = ids.at(*g.label(v));
  }
  return keys;
}

// Relational coarsest partition in the style of Paige and Tarjan. The
// transition relation is parent -> child, so the preimage of a block B is
// the set of nodes with at least one child in B. Q-blocks are contiguous
// ranges of `elems_`; compound blocks group Q-blocks, and every Q-block is
// stable with respect to every compound block.
class Refiner {
 public:
  explicit Refiner(const RawGraph& g) : g_(g), n_(static_cast<NodeId>(g.node_count())) {}

  Partition run() {
    if (n_ == 0) return Partition{};
    init_edges();
    init_blocks();
    refine();
    std::vector<std::size_t> keys(blk_.begin(), blk_.end());
    return Partition::from_keys(keys);
  }

 private:
  struct Block {
    NodeId first;
    NodeId mid;  // [first, mid) holds the currently marked nodes
    NodeId end;
    std::uint32_t compound;
    std::uint32_t slot;  // index in compounds_[compound]
  };

  void init_edges() {
    // Incoming transitions of each child, as (parent, edge id) in CSR form.
    in_off_.assign(n_ + 1, 0);
    for (NodeId y = 0; y < n_; ++y) in_off_[y + 1] = in_off_[y] + g_.parents(y).size();
    in_src_.resize(in_off_[n_]);
    for (NodeId y = 0; y < n_; ++y) {
      auto ps = g_.parents(y);
      std::copy(ps.begin(), ps.end(), in_src_.begin() + static_cast<std::ptrdiff_t>(in_off_[y]));
    }
    // One count record per node for the single initial compound block.
    rec_count_.resize(n_);
    for (NodeId x = 0; x < n_; ++x) rec_count_[x] = g_.children(x).size();
    edge_rec_.resize(in_src_.size());
    for (std::size_t e = 0; e < in_src_.size(); ++e) edge_rec_[e] = in_src_[e];

    count_b_.assign(n_, 0);
    s_rec_.assign(n_, 0);
    new_rec_.assign(n_, 0);
  }

  void init_blocks() {
    // Labels first, then split leaves from inner nodes: the initial Q is
    // then stable with respect to the whole node set.
    auto labels = label_keys(g_);
    std::vector<std::size_t> keys(n_);
    for (NodeId v = 0; v < n_; ++v) keys[v] = labels[v] * 2 + (g_.children(v).empty() ? 0 : 1);
    elems_.resize(n_);
    for (NodeId v = 0; v < n_; ++v) elems_[v] = v;
    std::stable_sort(elems_.begin(), elems_.end(),
                     [&](NodeId a, NodeId b) { return keys[a] < keys[b]; });
    loc_.resize(n_);
    blk_.resize(n_);
    compounds_.assign(1, {});
    for (NodeId i = 0; i < n_; ++i) {
      NodeId v = elems_[i];
      loc_[v] = i;
      if (i == 0 || keys[v] != keys[elems_[i - 1]]) {
        blocks_.push_back({i, i, i, 0, static_cast<std::uint32_t>(compounds_[0].size())});
        compounds_[0].push_back(static_cast<std::uint32_t>(blocks_.size() - 1));
      }
      blocks_.back().end = i + 1;
      blk_[v] = static_cast<std::uint32_t>(blocks_.size() - 1);
    }
    if (compounds_[0].size() >= 2) work_.push_back(0);
  }

  NodeId size(std::uint32_t b) const { return blocks_[b].end - blocks_[b].first; }

  void mark(NodeId x) {
    const std::uint32_t b = blk_[x];
    Block& block = blocks_[b];
    if (loc_[x] < block.mid) return;
    if (block.mid == block.first) touched_.push_back(b);
    NodeId other = elems_[block.mid];
    std::swap(elems_[loc_[x]], elems_[block.mid]);
    loc_[other] = loc_[x];
    loc_[x] = block.mid;
    ++block.mid;
  }

  void split_marked() {
    for (std::uint32_t b : touched_) {
      Block old = blocks_[b];
      if (old.mid == old.end) {
        blocks_[b].mid = old.first;
        continue;
      }
      Block fresh{};
      if (old.mid - old.first <= old.end - old.mid) {
        fresh = {old.first, old.first, old.mid, old.compound, 0};
        blocks_[b].first = old.mid;
      } else {
        fresh = {old.mid, old.mid, old.end, old.compound, 0};
        blocks_[b].end = old.mid;
      }
      blocks_[b].mid = blocks_[b].first;
      auto& siblings = compounds_[old.compound];
      fresh.slot = static_cast<std::uint32_t>(siblings.size());
      const auto id = static_cast<std::uint32_t>(blocks_.size());
      blocks_.push_back(fresh);
      siblings.push_back(id);
      if (siblings.size() == 2) work_.push_back(old.compound);
      for (NodeId i = fresh.first; i < fresh.end; ++i) blk_[elems_[i]] = id;
    }
    touched_.clear();
  }

  void refine() {
    std::vector<NodeId> splitter;
    std::vector<NodeId> preimage;
    while (!work_.empty()) {
      const std::uint32_t c = work_.back();
      work_.pop_back();
      if (compounds_[c].size() < 2) continue;

      // Take a Q-block of at most half the compound block's size.
      std::uint32_t b = compounds_[c][0];
      if (size(compounds_[c][1]) < size(b)) b = compounds_[c][1];
      detach(b);
      if (compounds_[c].size() >= 2) work_.push_back(c);
      blocks_[b].compound = static_cast<std::uint32_t>(compounds_.size());
      blocks_[b].slot = 0;
      compounds_.push_back({b});

      splitter.assign(elems_.begin() + blocks_[b].first, elems_.begin() + blocks_[b].end);
      preimage.clear();
      for (NodeId y : splitter) {
        for (std::size_t e = in_off_[y]; e < in_off_[y + 1]; ++e) {
          NodeId x = in_src_[e];
          if (count_b_[x]++ == 0) {
            preimage.push_back(x);
            s_rec_[x] = edge_rec_[e];
          }
        }
      }

      // Split by "has a child in B".
      for (NodeId x : preimage) mark(x);
      split_marked();
      // Split by "has a child in B and none in S - B".
      for (NodeId x : preimage) {
        if (count_b_[x] == rec_count_[s_rec_[x]]) mark(x);
      }
      split_marked();

      for (NodeId x : preimage) {
        rec_count_[s_rec_[x]] -= count_b_[x];
        new_rec_[x] = static_cast<std::uint32_t>(rec_count_.size());
        rec_count_.push_back(count_b_[x]);
      }
      for (NodeId y : splitter) {
        for (std::size_t e = in_off_[y]; e < in_off_[y + 1]; ++e) edge_rec_[e] = new_rec_[in_src_[e]];
      }
      for (NodeId x : preimage) count_b_[x] = 0;
    }
  }

  void detach(std::uint32_t b) {
    auto& list = compounds_[blocks_[b].compound];
    const std::uint32_t slot = blocks_[b].slot;
    list[slot] = list.back();
    blocks_[list[slot]].slot = slot;
    list.pop_back();
  }

  const RawGraph& g_;
  const NodeId n_;

  std::vector<NodeId> elems_;
  std::vector<NodeId> loc_;
  std::vector<std::uint32_t> blk_;
  std::vector<Block> blocks_;
  std::vector<std::vector<std::uint32_t>> compounds_;
  std::vector<std::uint32_t> work_;
  std::vector<std::uint32_t> touched_;

  std::vector<std::size_t> in_off_;
  std::vector<NodeId> in_src_;
  std::vector<std::uint32_t> edge_rec_;
  std::vector<std::size_t> rec_count_;

  std::vector<std::size_t> count_b_;
  std::vector<std::uint32_t> s_rec_;
  std::vector<std::uint32_t> new_rec_;
};

/// Node-for-node duplicate test: equal labels and, for unlabeled nodes,
/// equal child lists.
bool has_duplicate_nodes(const RawGraph& g) {
  std::set<std::pair<std::optional<std::string>, std::vector<NodeId>>> seen;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto kids = g.children(v);
    if (!seen.emplace(g.label(v), std::vector<NodeId>(kids.begin(), kids.end())).second) return true;
  }
  return false;
}

RawGraph disjoint_union(const RawGraph& a, const RawGraph& b) {
  const auto offset = static_cast<NodeId>(a.node_count());
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.push_back({e.child + offset, e.parent + offset});
  RawGraph u = RawGraph::from_edges(a.node_count() + b.node_count(), edges);
  for (NodeId v = 0; v < a.node_count(); ++v) {
    if (a.is_labeled(v)) u.set_label(v, *a.label(v));
  }
  for (NodeId v = 0; v < b.node_count(); ++v) {
    if (b.is_labeled(v)) u.set_label(v + offset, *b.label(v));
  }
  return u;
}

}  // namespace

SimCheck is_simulation(const SimMap& f) {
  const RawGraph& src = f.source.graph();
  const RawGraph& dst = f.target.graph();
  if (f.map.size() != src.node_count()) throw std::invalid_argument("simulation map is not total");
  for (NodeId image : f.map) {
    if (image >= dst.node_count()) throw std::invalid_argument("simulation map leaves target range");
  }
  using Clause = SimCheck::Clause;
  // Label and forward clauses for every node first, so that a map which
  // does not even preserve edges is reported as such.
  for (NodeId x = 0; x < src.node_count(); ++x) {
    const NodeId fx = f.map[x];
    if (src.is_labeled(x) || dst.is_labeled(fx)) {
      if (src.label(x) != dst.label(fx)) return {false, Clause::kLabel, std::pair{x, fx}};
    }
    for (NodeId child : src.children(x)) {
      if (!dst.has_edge(f.map[child], fx)) return {false, Clause::kForward, std::pair{child, x}};
    }
  }
  std::vector<NodeId> images;
  for (NodeId x = 0; x < src.node_count(); ++x) {
    const NodeId fx = f.map[x];
    images.clear();
    for (NodeId child : src.children(x)) images.push_back(f.map[child]);
    std::sort(images.begin(), images.end());
    for (NodeId y : dst.children(fx)) {
      if (!std::binary_search(images.begin(), images.end(), y)) {
        return {false, Clause::kLifting, std::pair{x, y}};
      }
    }
  }
  return {};
}

BisimCheck is_bisimulation(const Relation& r) {
  const RawGraph& left = r.left.graph();
  const RawGraph& right = r.right.graph();
  std::set<std::pair<NodeId, NodeId>> pairs(r.pairs.begin(), r.pairs.end());
  BisimCheck out;
  std::vector<bool> left_hit(left.node_count(), false);
  std::vector<bool> right_hit(right.node_count(), false);
  for (auto [a, b] : pairs) {
    if (a >= left.node_count() || b >= right.node_count()) {
      throw std::invalid_argument("relation pair out of range");
    }
    left_hit[a] = right_hit[b] = true;
    if (!out.is_bisimulation) continue;
    bool ok = left.label(a) == right.label(b);
    for (NodeId a2 : left.children(a)) {
      if (!ok) break;
      auto kids = right.children(b);
      ok = std::any_of(kids.begin(), kids.end(), [&](NodeId b2) { return pairs.count({a2, b2}) > 0; });
    }
    for (NodeId b2 : right.children(b)) {
      if (!ok) break;
      auto kids = left.children(a);
      ok = std::any_of(kids.begin(), kids.end(), [&](NodeId a2) { return pairs.count({a2, b2}) > 0; });
    }
    if (!ok) {
      out.is_bisimulation = false;
      out.counterexample = std::pair{a, b};
    }
  }
  out.bi_entire = std::all_of(left_hit.begin(), left_hit.end(), [](bool h) { return h; }) &&
                  std::all_of(right_hit.begin(), right_hit.end(), [](bool h) { return h; });
  return out;
}

Partition max_bisim_naive(const RawGraph& graph) {
  Partition current = Partition::from_keys(label_keys(graph));
  for (;;) {
    std::map<std::pair<NodeId, std::vector<NodeId>>, std::size_t> signatures;
    std::vector<std::size_t> keys(graph.node_count());
    for (NodeId v = 0; v < graph.node_count(); ++v) {
      std::vector<NodeId> child_blocks;
      for (NodeId c : graph.children(v)) child_blocks.push_back(current.block_of(c));
      std::sort(child_blocks.begin(), child_blocks.end());
      child_blocks.erase(std::unique(child_blocks.begin(), child_blocks.end()), child_blocks.end());
      auto key = std::pair{current.block_of(v), std::move(child_blocks)};
      keys[v] = signatures.try_emplace(std::move(key), signatures.size()).first->second;
    }
    Partition next = Partition::from_keys(keys);
    if (next.block_count() == current.block_count()) return next;
    current = std::move(next);
  }
}

Partition max_bisim_refine(const RawGraph& graph) { return Refiner(graph).run(); }

bool is_extensional(const WfApg& apg) {
  const bool by_bisimulation = max_bisim_refine(apg.graph()).is_discrete();
  const bool by_child_sets = !has_duplicate_nodes(apg.graph());
  if (by_bisimulation != by_child_sets) {
    throw std::logic_error("extensionality tests disagree on a well-founded graph");
  }
  return by_bisimulation;
}

Quotient quotient_by(const WfApg& apg, const Partition& partition) {
  const RawGraph& g = apg.graph();
  if (partition.node_count() != g.node_count()) {
    throw std::invalid_argument("partition does not match graph");
  }
  std::vector<NodeId> index_of_block(g.node_count(), 0);
  NodeId next = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (partition.block_of(v) == v) index_of_block[v] = next++;
  }
  std::vector<NodeId> map(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) map[v] = index_of_block[partition.block_of(v)];

  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (NodeId p = 0; p < g.node_count(); ++p) {
    for (NodeId c : g.children(p)) edges.push_back({map[c], map[p]});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  RawGraph q = RawGraph::from_edges(next, edges);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.is_labeled(v) && !q.is_labeled(map[v])) q.set_label(map[v], *g.label(v));
  }
  WfApg out = WfApgAccess::make(std::move(q), map[apg.root()]);
  SimMap sim{apg, out, std::move(map)};
  return {std::move(out), std::move(sim)};
}

Quotient ext_quotient(const WfApg& apg) { return quotient_by(apg, max_bisim_refine(apg.graph())); }

NotExtensionalError::NotExtensionalError(Side side)
    : std::invalid_argument(side == Side::kLeft ? "left APG is not extensional"
                                                : "right APG is not extensional"),
      side_(side) {}

std::optional<SimMap> iso(const WfApg& x, const WfApg& y) {
  if (!is_extensional(x)) throw NotExtensionalError(NotExtensionalError::Side::kLeft);
  if (!is_extensional(y)) throw NotExtensionalError(NotExtensionalError::Side::kRight);
  if (x.node_count() != y.node_count()) return std::nullopt;

  const auto offset = static_cast<NodeId>(x.node_count());
  Partition p = max_bisim_refine(disjoint_union(x.graph(), y.graph()));
  if (!p.same_block(x.root(), y.root() + offset)) return std::nullopt;

  // Extensional sides: each block holds at most one node from each side.
  std::unordered_map<NodeId, NodeId> partner;
  for (NodeId v = 0; v < y.node_count(); ++v) partner.emplace(p.block_of(v + offset), v);
  std::vector<NodeId> map(x.node_count());
  for (NodeId v = 0; v < x.node_count(); ++v) {
    auto it = partner.find(p.block_of(v));
    if (it == partner.end()) return std::nullopt;
    map[v] = it->second;
  }
  return SimMap{x, y, std::move(map)};
}

WfApg unfold_to_tree(const WfApg& apg, std::size_t depth_limit) {
  struct PathNode {
    NodeId origin;
    std::size_t depth;
  };
  std::vector<PathNode> nodes{{apg.root(), 0}};
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const PathNode here = nodes[i];
    for (NodeId c : apg.children(here.origin)) {
      if (here.depth + 1 > depth_limit) {
        throw std::invalid_argument("unfold_to_tree: path longer than depth limit");
      }
      edges.push_back({static_cast<NodeId>(nodes.size()), static_cast<NodeId>(i)});
      nodes.push_back({c, here.depth + 1});
    }
  }
  RawGraph tree = RawGraph::from_edges(nodes.size(), edges);
  for (NodeId v = 0; v < nodes.size(); ++v) {
    if (apg.is_labeled(nodes[v].origin)) tree.set_label(v, *apg.label(nodes[v].origin));
  }
  return WfApgAccess::make(std::move(tree), 0);
}

}  // namespace matset
