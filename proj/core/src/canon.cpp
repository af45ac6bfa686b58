#include "matset/canon.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "internal.hpp"

namespace matset {
namespace detail {

struct HfNode {
  bool atom = false;
  std::string name;
  std::vector<HfSet> members;
  std::size_t hash = 0;
  std::uint64_t id = 0;
};

}  // namespace detail

namespace {

using detail::HfNode;

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NodeHash {
  std::size_t operator()(const HfNode* n) const noexcept { return n->hash; }
};

// Members are already interned, so comparing member handles is a full
// structural comparison; the hash is only a bucket hint.
struct NodeEq {
  bool operator()(const HfNode* a, const HfNode* b) const noexcept {
    return a->atom == b->atom && a->name == b->name && a->members == b->members;
  }
};

class InternStore {
 public:
  static InternStore& instance() {
    static InternStore store;
    return store;
  }

  const HfNode* intern(HfNode candidate) {
    candidate.hash = candidate.atom ? mix(0x51ed27, std::hash<std::string>{}(candidate.name))
                                    : fingerprint(candidate.members);
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = index_.find(&candidate); it != index_.end()) return *it;
    candidate.id = nodes_.size();
    nodes_.push_back(std::move(candidate));
    const HfNode* stored = &nodes_.back();
    index_.insert(stored);
    return stored;
  }

  std::size_t size() {
    std::lock_guard<std::mutex> lock(mu_);
    return nodes_.size();
  }

 private:
  static std::size_t fingerprint(const std::vector<HfSet>& members) {
    std::size_t h = 0x6a09e667;
    for (const HfSet& m : members) h = mix(h, m.hash());
    return mix(h, members.size());
  }

  std::mutex mu_;
  std::deque<HfNode> nodes_;
  std::unordered_set<const HfNode*, NodeHash, NodeEq> index_;
};

const HfNode* empty_node() {
  static const HfNode* node = InternStore::instance().intern(HfNode{});
  return node;
}

}  // namespace

HfSet::HfSet() : node_(empty_node()) {}

HfSet HfSet::atom(std::string_view name) {
  HfNode n;
  n.atom = true;
  n.name = std::string(name);
  return HfSet(InternStore::instance().intern(std::move(n)));
}

HfSet HfSet::set(std::vector<HfSet> elements) {
  std::sort(elements.begin(), elements.end(),
            [](const HfSet& a, const HfSet& b) { return compare(a, b) < 0; });
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  HfNode n;
  n.members = std::move(elements);
  return HfSet(InternStore::instance().intern(std::move(n)));
}

bool HfSet::is_atom() const noexcept { return node_->atom; }

const std::string& HfSet::atom_name() const {
  if (!node_->atom) throw std::logic_error("atom_name() on a set");
  return node_->name;
}

std::span<const HfSet> HfSet::members() const noexcept { return node_->members; }

bool HfSet::contains(const HfSet& element) const {
  const auto& m = node_->members;
  auto it = std::lower_bound(m.begin(), m.end(), element,
                             [](const HfSet& a, const HfSet& b) { return compare(a, b) < 0; });
  return it != m.end() && *it == element;
}

std::uint64_t HfSet::id() const noexcept { return node_->id; }
std::size_t HfSet::hash() const noexcept { return node_->hash; }

std::strong_ordering operator<=>(const HfSet& a, const HfSet& b) { return compare(a, b); }

std::strong_ordering compare(const HfSet& a, const HfSet& b) {
  if (a == b) return std::strong_ordering::equal;
  if (a.is_atom() != b.is_atom()) {
    return a.is_atom() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (a.is_atom()) return a.atom_name().compare(b.atom_name()) <=> 0;
  auto ma = a.members();
  auto mb = b.members();
  if (ma.size() != mb.size()) return ma.size() <=> mb.size();
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (ma[i] != mb[i]) return compare(ma[i], mb[i]);
  }
  return std::strong_ordering::equal;
}

namespace {

void render_into(const HfSet& s, std::string& out) {
  if (s.is_atom()) {
    out += '@';
    out += s.atom_name();
    return;
  }
  out += '{';
  bool first = true;
  for (const HfSet& m : s.members()) {
    if (!first) out += ',';
    first = false;
    render_into(m, out);
  }
  out += '}';
}

}  // namespace

std::string render(const HfSet& s) {
  std::string out;
  render_into(s, out);
  return out;
}

std::size_t intern_store_size() { return InternStore::instance().size(); }

std::size_t rank(const HfSet& s) {
  std::unordered_map<std::uint64_t, std::size_t> memo;
  std::function<std::size_t(const HfSet&)> go = [&](const HfSet& x) -> std::size_t {
    if (x.is_atom() || x.size() == 0) return 0;
    if (auto it = memo.find(x.id()); it != memo.end()) return it->second;
    std::size_t r = 0;
    for (const HfSet& m : x.members()) r = std::max(r, go(m) + 1);
    memo.emplace(x.id(), r);
    return r;
  };
  return go(s);
}

std::vector<HfSet> hereditary_members(const HfSet& s) {
  std::unordered_set<HfSet> seen;
  std::vector<HfSet> stack(s.members().begin(), s.members().end());
  std::vector<HfSet> out;
  while (!stack.empty()) {
    HfSet x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    out.push_back(x);
    for (const HfSet& m : x.members()) stack.push_back(m);
  }
  std::sort(out.begin(), out.end(), [](const HfSet& a, const HfSet& b) { return compare(a, b) < 0; });
  return out;
}

std::vector<HfSet> canonicalize_nodes(const WfApg& apg) {
  const RawGraph& g = apg.graph();
  std::vector<HfSet> value(g.node_count());
  std::vector<HfSet> kids;
  for (NodeId v : topological_order(g)) {
    if (g.is_labeled(v)) {
      value[v] = HfSet::atom(*g.label(v));
      continue;
    }
    kids.clear();
    for (NodeId c : g.children(v)) kids.push_back(value[c]);
    value[v] = HfSet::set(kids);
  }
  return value;
}

HfSet canonicalize(const WfApg& apg) { return canonicalize_nodes(apg)[apg.root()]; }

WfApg to_apg(const HfSet& s) {
  std::vector<HfSet> nodes = hereditary_members(s);
  nodes.push_back(s);
  std::unordered_map<HfSet, NodeId> index;
  for (NodeId i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < nodes.size(); ++i) {
    for (const HfSet& m : nodes[i].members()) edges.push_back({index.at(m), i});
  }
  RawGraph g = RawGraph::from_edges(nodes.size(), edges);
  for (NodeId i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_atom()) g.set_label(i, nodes[i].atom_name());
  }
  return WfApgAccess::make(std::move(g), static_cast<NodeId>(nodes.size() - 1));
}

namespace {

Natural encode_memo(const HfSet& s, std::unordered_map<std::uint64_t, Natural>& memo) {
  if (s.is_atom()) {
    throw AckError(AckError::Kind::kAtomNotEncodable, "atom " + render(s) + " has no Ackermann code");
  }
  if (auto it = memo.find(s.id()); it != memo.end()) return it->second;
  Natural code = 0;
  for (const HfSet& m : s.members()) {
    Natural position = encode_memo(m, memo);
    if (position > kMaxAckBitPosition) {
      throw AckError(AckError::Kind::kCodeTooLarge, "Ackermann code of " + render(s) + " is too large");
    }
    boost::multiprecision::bit_set(code, position.convert_to<std::size_t>());
  }
  memo.emplace(s.id(), code);
  return code;
}

}  // namespace

Natural ack_encode(const HfSet& s) {
  std::unordered_map<std::uint64_t, Natural> memo;
  return encode_memo(s, memo);
}

HfSet ack_decode(const Natural& n) {
  if (n < 0) throw std::domain_error("negative Ackermann code");
  if (n == 0) return HfSet::empty();
  std::vector<HfSet> members;
  const std::size_t top = boost::multiprecision::msb(n);
  for (std::size_t bit = 0; bit <= top; ++bit) {
    if (boost::multiprecision::bit_test(n, bit)) members.push_back(ack_decode(Natural(bit)));
  }
  return HfSet::set(std::move(members));
}

}  // namespace matset
