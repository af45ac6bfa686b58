#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "matset/graph.hpp"

namespace matset {

namespace detail {
struct HfNode;
}

/// A hereditarily finite set with atoms, held as a handle to an interned
/// node. Structurally equal values share one node, so `==` is a pointer
/// comparison. Values are immutable and live for the rest of the process.
class HfSet {
 public:
  /// The empty set.
  HfSet();

  static HfSet atom(std::string_view name);
  /// Sorts and deduplicates `elements`.
  static HfSet set(std::vector<HfSet> elements);
  static HfSet empty() { return HfSet(); }

  bool is_atom() const noexcept;
  bool is_set() const noexcept { return !is_atom(); }
  /// Throws std::logic_error on a set.
  const std::string& atom_name() const;

  /// Members in ascending `compare` order; empty for atoms.
  std::span<const HfSet> members() const noexcept;
  std::size_t size() const noexcept { return members().size(); }
  bool contains(const HfSet& element) const;

  /// Intern identity: stable for the process lifetime, not across runs.
  std::uint64_t id() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const HfSet& a, const HfSet& b) noexcept { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(const HfSet& a, const HfSet& b);

 private:
  explicit HfSet(const detail::HfNode* node) : node_(node) {}

  const detail::HfNode* node_;
};

/// Total order used for canonical member lists: atoms before sets, atoms by
/// name, sets by member count and then lexicographically by members. It
/// carries no set-theoretic meaning.
std::strong_ordering compare(const HfSet& a, const HfSet& b);

/// Braces notation: `{}`, `{{},{{}}}`, atoms as `@name`.
std::string render(const HfSet& s);

/// Number of distinct interned values so far.
std::size_t intern_store_size();

/// Von Neumann rank: 0 for atoms and the empty set, else 1 + max member rank.
std::size_t rank(const HfSet& s);

/// Transitive closure: all hereditary members, ascending. Atoms have none.
std::vector<HfSet> hereditary_members(const HfSet& s);

/// Value of every node of the APG, computed children-first. The root's
/// entry is the set the APG presents, extensional or not.
std::vector<HfSet> canonicalize_nodes(const WfApg& apg);

/// The set presented by the APG. Equal for two APGs iff their extensional
/// quotients are isomorphic.
HfSet canonicalize(const WfApg& apg);

/// Minimal extensional presentation: one node per hereditary member in
/// ascending order, root last.
WfApg to_apg(const HfSet& s);

using Natural = boost::multiprecision::cpp_int;

class AckError : public std::domain_error {
 public:
  enum class Kind { kAtomNotEncodable, kCodeTooLarge };
  AckError(Kind kind, const std::string& what) : std::domain_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Largest member code `ack_encode` will place as a bit position.
inline constexpr std::size_t kMaxAckBitPosition = std::size_t{1} << 26;

/// ack(S) = Σ_{t ∈ S} 2^ack(t). Pure sets only.
Natural ack_encode(const HfSet& s);
HfSet ack_decode(const Natural& n);

}  // namespace matset

template <>
struct std::hash<matset::HfSet> {
  std::size_t operator()(const matset::HfSet& s) const noexcept { return s.hash(); }
};
