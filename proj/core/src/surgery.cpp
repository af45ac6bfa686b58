#include "matset/surgery.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "matset/bisim.hpp"
#include "setops_internal.hpp"

namespace matset::surgery {

namespace {

constexpr NodeId kDropped = std::numeric_limits<NodeId>::max();

class Builder {
 public:
  NodeId add() { return static_cast<NodeId>(count_++); }

  void edge(NodeId child, NodeId parent) { edges_.push_back({child, parent}); }

  /// Copies `apg` in; the result maps old nodes to new ones. Without the
  /// root this is X⫽⋆ and the root maps to kDropped.
  std::vector<NodeId> embed(const WfApg& apg, bool with_root) {
    const RawGraph& g = apg.graph();
    std::vector<NodeId> to(g.node_count(), kDropped);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (!with_root && v == apg.root()) continue;
      to[v] = add();
      if (g.is_labeled(v)) labels_.emplace_back(to[v], *g.label(v));
    }
    for (const Edge& e : g.edges()) {
      if (to[e.parent] != kDropped) edge(to[e.child], to[e.parent]);
    }
    return to;
  }

  WfApg finish(NodeId root) {
    RawGraph g = RawGraph::from_edges(count_, edges_);
    for (auto& [node, name] : labels_) g.set_label(node, std::move(name));
    Induced accessible = restrict_accessible(g, root);
    return validate(std::move(accessible.graph), accessible.root);
  }

 private:
  std::size_t count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::pair<NodeId, std::string>> labels_;
};

std::vector<NodeId> mapped_members(const WfApg& apg, const std::vector<NodeId>& to) {
  std::vector<NodeId> out;
  for (NodeId c : apg.children(apg.root())) out.push_back(to[c]);
  return out;
}

/// Builds X⫽⋆ + Y⫽⋆ + |X| + |X|×|Y| + |X|×|Y| and returns the node of
/// (x_i, y_j) at [i][j].
std::vector<std::vector<NodeId>> add_pairs(Builder& b, const WfApg& x, const WfApg& y) {
  const std::vector<NodeId> xs = mapped_members(x, b.embed(x, false));
  const std::vector<NodeId> ys = mapped_members(y, b.embed(y, false));
  detail::require_size(static_cast<double>(xs.size()) * static_cast<double>(ys.size()), "prod");
  std::vector<std::vector<NodeId>> pairs(xs.size(), std::vector<NodeId>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const NodeId singleton = b.add();
    b.edge(xs[i], singleton);
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const NodeId doubleton = b.add();
      b.edge(xs[i], doubleton);
      b.edge(ys[j], doubleton);
      const NodeId kp = b.add();
      b.edge(singleton, kp);
      b.edge(doubleton, kp);
      pairs[i][j] = kp;
    }
  }
  return pairs;
}

void require_set_apg(const WfApg& apg, const char* op) {
  if (apg.is_labeled(apg.root())) {
    throw SetOpError(SetOpError::Kind::kAtomArgument, std::string(op) + ": argument is an atom");
  }
}

}  // namespace

WfApg pair_graph(const WfApg& x, const WfApg& y) {
  Builder b;
  const NodeId rx = b.embed(x, true)[x.root()];
  const NodeId ry = b.embed(y, true)[y.root()];
  const NodeId root = b.add();
  b.edge(rx, root);
  b.edge(ry, root);
  return b.finish(root);
}

WfApg union_graph(const WfApg& x) {
  require_set_apg(x, "union");
  Builder b;
  const std::vector<NodeId> to = b.embed(x, false);
  const NodeId root = b.add();
  std::vector<bool> linked(x.node_count(), false);
  for (NodeId m : x.children(x.root())) {
    for (NodeId mm : x.children(m)) {
      if (!linked[mm]) {
        linked[mm] = true;
        b.edge(to[mm], root);
      }
    }
  }
  return b.finish(root);
}

WfApg product_graph(const WfApg& x, const WfApg& y) {
  require_set_apg(x, "prod");
  require_set_apg(y, "prod");
  Builder b;
  const auto pairs = add_pairs(b, x, y);
  const NodeId root = b.add();
  for (const auto& row : pairs) {
    for (NodeId kp : row) b.edge(kp, root);
  }
  return b.finish(root);
}

WfApg func_space_graph(const WfApg& x, const WfApg& y) {
  require_set_apg(x, "exp");
  require_set_apg(y, "exp");
  const std::size_t m = x.children(x.root()).size();
  const std::size_t n = y.children(y.root()).size();
  detail::require_size(std::pow(static_cast<double>(n), static_cast<double>(m)), "exp");
  Builder b;
  const auto pairs = add_pairs(b, x, y);
  const NodeId root = b.add();
  if (m > 0 && n == 0) return b.finish(root);
  std::vector<std::size_t> choice(m, 0);
  for (;;) {
    const NodeId f = b.add();
    for (std::size_t i = 0; i < m; ++i) b.edge(pairs[i][choice[i]], f);
    b.edge(f, root);
    std::size_t i = 0;
    while (i < m && ++choice[i] == n) choice[i++] = 0;
    if (i == m) break;
  }
  return b.finish(root);
}

WfApg mv_func_space_graph(const WfApg& x, const WfApg& y) {
  require_set_apg(x, "mvexp");
  require_set_apg(y, "mvexp");
  const std::size_t m = x.children(x.root()).size();
  const std::size_t n = y.children(y.root()).size();
  if (n >= 20) detail::require_size(1e300, "mvexp");
  const std::size_t options = (std::size_t{1} << n) - 1;
  detail::require_size(std::pow(static_cast<double>(options), static_cast<double>(m)), "mvexp");
  Builder b;
  const auto pairs = add_pairs(b, x, y);
  const NodeId root = b.add();
  if (m > 0 && n == 0) return b.finish(root);
  std::vector<std::size_t> choice(m, 1);
  for (;;) {
    const NodeId r = b.add();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (choice[i] >> j & 1) b.edge(pairs[i][j], r);
      }
    }
    b.edge(r, root);
    std::size_t i = 0;
    while (i < m && ++choice[i] > options) choice[i++] = 1;
    if (i == m) break;
  }
  return b.finish(root);
}

WfApg powerset_graph(const WfApg& x) {
  require_set_apg(x, "pow");
  Builder b;
  const std::vector<NodeId> xs = mapped_members(x, b.embed(x, false));
  const std::size_t m = xs.size();
  if (m >= 31) detail::require_size(1e300, "pow");
  detail::require_size(std::ldexp(1.0, static_cast<int>(m)), "pow");
  const NodeId root = b.add();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    const NodeId subset = b.add();
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) b.edge(xs[i], subset);
    }
    b.edge(subset, root);
  }
  return b.finish(root);
}

WfApg tc_graph(const WfApg& x) {
  require_set_apg(x, "tc");
  Builder b;
  const std::vector<NodeId> to = b.embed(x, false);
  const NodeId root = b.add();
  for (NodeId v : to) {
    if (v != kDropped) b.edge(v, root);
  }
  return b.finish(root);
}

WfApg omega_graph(std::size_t k) {
  Builder b;
  std::vector<NodeId> numerals;
  for (std::size_t i = 0; i < k; ++i) {
    const NodeId v = b.add();
    for (NodeId smaller : numerals) b.edge(smaller, v);
    numerals.push_back(v);
  }
  const NodeId root = b.add();
  for (NodeId v : numerals) b.edge(v, root);
  return b.finish(root);
}

WfApg separation_graph(const WfApg& x, std::span<const NodeId> selected) {
  require_set_apg(x, "sep");
  Builder b;
  const std::vector<NodeId> to = b.embed(x, false);
  const NodeId root = b.add();
  for (NodeId s : selected) {
    if (!x.graph().has_edge(s, x.root())) {
      throw std::invalid_argument("separation_graph: selected node is not a member");
    }
    b.edge(to[s], root);
  }
  return b.finish(root);
}

WfApg replacement_graph(std::span<const WfApg> images) {
  Builder b;
  std::vector<NodeId> roots;
  for (const WfApg& image : images) roots.push_back(b.embed(image, true)[image.root()]);
  const NodeId root = b.add();
  for (NodeId r : roots) b.edge(r, root);
  return b.finish(root);
}

WfApg choice_graph(const WfApg& x) {
  require_set_apg(x, "choice");
  const std::vector<HfSet> value = canonicalize_nodes(x);
  Builder b;
  const std::vector<NodeId> to = b.embed(x, false);
  const NodeId root = b.add();
  for (NodeId z : x.children(x.root())) {
    detail::require_choosable(value[z]);
    NodeId least = x.children(z).front();
    for (NodeId c : x.children(z)) {
      if (value[c] < value[least]) least = c;
    }
    const NodeId singleton = b.add();
    b.edge(to[z], singleton);
    const NodeId doubleton = b.add();
    b.edge(to[z], doubleton);
    b.edge(to[least], doubleton);
    const NodeId kp = b.add();
    b.edge(singleton, kp);
    b.edge(doubleton, kp);
    b.edge(kp, root);
  }
  return b.finish(root);
}

HfSet read_extensional(const WfApg& apg) {
  const std::vector<HfSet> value = canonicalize_nodes(apg);
  std::unordered_set<HfSet> seen;
  for (const HfSet& v : value) {
    if (!seen.insert(v).second) {
      throw std::logic_error("read_extensional: two nodes present " + render(v));
    }
  }
  return value[apg.root()];
}

HfSet collapse(const WfApg& apg) { return read_extensional(ext_quotient(apg).apg); }

HfSet pair(const HfSet& x, const HfSet& y) { return collapse(pair_graph(to_apg(x), to_apg(y))); }

HfSet union_of(const HfSet& x) { return collapse(union_graph(to_apg(x))); }

HfSet kpair(const HfSet& x, const HfSet& y) { return surgery::pair(surgery::pair(x, x), surgery::pair(x, y)); }

HfSet product(const HfSet& x, const HfSet& y) { return collapse(product_graph(to_apg(x), to_apg(y))); }

HfSet func_space(const HfSet& x, const HfSet& y) {
  return collapse(func_space_graph(to_apg(x), to_apg(y)));
}

HfSet mv_func_space(const HfSet& x, const HfSet& y) {
  return collapse(mv_func_space_graph(to_apg(x), to_apg(y)));
}

HfSet powerset(const HfSet& x) { return collapse(powerset_graph(to_apg(x))); }

HfSet tc(const HfSet& x) { return collapse(tc_graph(to_apg(x))); }

HfSet vn(std::size_t n) { return collapse(omega_graph(n)); }

HfSet omega_upto(std::size_t k) { return collapse(omega_graph(k)); }

HfSet separation(const HfSet& x, const std::string& var, const Formula& phi, const Env& env) {
  detail::require_set(x, "sep");
  const WfApg apg = to_apg(x);
  const std::vector<HfSet> value = canonicalize_nodes(apg);
  Env local = env;
  std::vector<NodeId> selected;
  for (NodeId m : apg.children(apg.root())) {
    local.insert_or_assign(var, value[m]);
    if (eval(phi, local)) selected.push_back(m);
  }
  return collapse(separation_graph(apg, selected));
}

HfSet replacement_image(const HfSet& x, const std::function<HfSet(const HfSet&)>& f) {
  detail::require_set(x, "image");
  std::vector<WfApg> images;
  for (const HfSet& a : x.members()) images.push_back(to_apg(f(a)));
  return collapse(replacement_graph(images));
}

HfSet choice_function(const HfSet& x) { return collapse(choice_graph(to_apg(x))); }

}  // namespace matset::surgery
