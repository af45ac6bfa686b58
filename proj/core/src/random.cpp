#include "matset/random.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "internal.hpp"

namespace matset {

namespace {

std::vector<NodeId> shuffled_order(std::mt19937_64& rng, std::size_t n) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

/// Adds random forward edges (in `order`) until `edges` is reached or the
/// order is saturated.
void fill_edges(std::mt19937_64& rng, const std::vector<NodeId>& order, std::size_t edges,
                std::unordered_set<std::uint64_t>& seen, std::vector<Edge>& out) {
  const std::size_t n = order.size();
  const std::size_t max_edges = n < 2 ? 0 : n * (n - 1) / 2;
  edges = std::min(edges, max_edges);
  std::uniform_int_distribution<std::size_t> pick(0, n == 0 ? 0 : n - 1);
  while (out.size() < edges) {
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    const std::uint64_t key = std::uint64_t{order[i]} << 32 | order[j];
    if (seen.insert(key).second) out.push_back({order[i], order[j]});
  }
}

}  // namespace

RawGraph random_dag(std::mt19937_64& rng, std::size_t nodes, std::size_t edges) {
  const std::vector<NodeId> order = shuffled_order(rng, nodes);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> out;
  fill_edges(rng, order, edges, seen, out);
  return RawGraph::from_edges(nodes, out);
}

WfApg random_apg(std::mt19937_64& rng, const RandomApgOptions& options) {
  const std::size_t n = std::max<std::size_t>(options.nodes, 1);
  const std::vector<NodeId> order = shuffled_order(rng, n);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(i + 1, n - 1)(rng);
    seen.insert(std::uint64_t{order[i]} << 32 | order[j]);
    out.push_back({order[i], order[j]});
  }
  fill_edges(rng, order, std::max(options.edges, out.size()), seen, out);
  RawGraph g = RawGraph::from_edges(n, out);
  if (options.atom_names > 0) {
    std::bernoulli_distribution labeled(options.atom_probability);
    std::uniform_int_distribution<std::size_t> name(0, options.atom_names - 1);
    for (NodeId v = 0; v < n; ++v) {
      if (v != order.back() && g.children(v).empty() && labeled(rng)) {
        g.set_label(v, "a" + std::to_string(name(rng)));
      }
    }
  }
  return WfApgAccess::make(std::move(g), order.back());
}

namespace {

HfSet random_set_of_rank(std::mt19937_64& rng, const RandomSetOptions& options, std::size_t rank) {
  if (rank == 0) return HfSet::empty();
  const std::size_t width = std::uniform_int_distribution<std::size_t>(0, options.max_width)(rng);
  std::bernoulli_distribution atom(options.atom_probability);
  std::vector<HfSet> members;
  for (std::size_t i = 0; i < width; ++i) {
    if (options.atom_names > 0 && atom(rng)) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(0, options.atom_names - 1)(rng);
      members.push_back(HfSet::atom("a" + std::to_string(k)));
      continue;
    }
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, rank - 1)(rng);
    members.push_back(random_set_of_rank(rng, options, r));
  }
  return HfSet::set(std::move(members));
}

}  // namespace

HfSet random_set(std::mt19937_64& rng, const RandomSetOptions& options) {
  return random_set_of_rank(rng, options, options.max_rank);
}

}  // namespace matset
