#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "matset/canon.hpp"
#include "matset/graph.hpp"
#include "matset/logic.hpp"

namespace matset {

class SetOpError : public std::invalid_argument {
 public:
  enum class Kind {
    kAtomArgument,
    kPartialFunction,
    kEmptyMemberFound,
    kAtomMemberFound,
    kPathMismatch,
    kTooLarge,
  };
  SetOpError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Which construction produces the result: graph surgery on APGs followed by
/// the extensional quotient, direct recursion on canonical values, or both
/// with a mismatch raised as kPathMismatch.
enum class Path { kSurgery, kDirect, kBoth };

/// A finite function between sets, keyed by canonical argument.
class MaterialFn {
 public:
  MaterialFn() = default;

  /// Reads a set of Kuratowski pairs. Throws SetOpError(kPartialFunction)
  /// when `graph` is not single-valued or has a non-pair member.
  static MaterialFn from_graph(const HfSet& graph);

  void set(const HfSet& argument, const HfSet& value) { table_[argument] = value; }
  std::optional<HfSet> at(const HfSet& argument) const;
  /// Throws SetOpError(kPartialFunction) outside the domain.
  HfSet apply(const HfSet& argument) const;

  HfSet domain() const;
  /// The set of Kuratowski pairs (a, f(a)).
  HfSet graph() const;

 private:
  std::map<HfSet, HfSet> table_;
};

using SetFunction = std::function<HfSet(const HfSet&)>;

// ---------------------------------------------------------------------------
// Direct constructions on canonical values. These are the reference
// definitions the surgery constructions are checked against.
namespace direct {

HfSet pair(const HfSet& x, const HfSet& y);
HfSet union_of(const HfSet& x);
HfSet kpair(const HfSet& x, const HfSet& y);
HfSet product(const HfSet& x, const HfSet& y);
HfSet func_space(const HfSet& x, const HfSet& y);
HfSet mv_func_space(const HfSet& x, const HfSet& y);
HfSet powerset(const HfSet& x);
HfSet tc(const HfSet& x);
HfSet vn(std::size_t n);
HfSet omega_upto(std::size_t k);
HfSet separation(const HfSet& x, const std::string& var, const Formula& phi, const Env& env);
HfSet replacement_image(const HfSet& x, const SetFunction& f);
HfSet choice_function(const HfSet& x);

}  // namespace direct

// ---------------------------------------------------------------------------
// Dispatching front end. `Path::kDirect` is the default.

HfSet empty();
HfSet pair(const HfSet& x, const HfSet& y, Path path = Path::kDirect);
/// Members of members. Atom members contribute nothing.
HfSet union_of(const HfSet& x, Path path = Path::kDirect);
/// {{x},{x,y}}.
HfSet kpair(const HfSet& x, const HfSet& y, Path path = Path::kDirect);
/// Kuratowski pairs (a, b) for a ∈ x, b ∈ y.
HfSet product(const HfSet& x, const HfSet& y, Path path = Path::kDirect);
/// Graphs of all total functions x → y.
HfSet func_space(const HfSet& x, const HfSet& y, Path path = Path::kDirect);
/// All entire relations from x to y.
HfSet mv_func_space(const HfSet& x, const HfSet& y, Path path = Path::kDirect);
HfSet powerset(const HfSet& x, Path path = Path::kDirect);
/// Smallest transitive set containing the members of x.
HfSet tc(const HfSet& x, Path path = Path::kDirect);
/// Von Neumann numeral.
HfSet vn(std::size_t n, Path path = Path::kDirect);
/// {vn(0), ..., vn(k-1)}: the first k members of ω.
HfSet omega_upto(std::size_t k, Path path = Path::kDirect);
/// Members a of x with `phi` true when `var` is bound to a.
HfSet separation(const HfSet& x, const std::string& var, const Formula& phi, const Env& env,
                 Path path = Path::kDirect);
HfSet replacement_image(const HfSet& x, const SetFunction& f, Path path = Path::kDirect);
/// Throws SetOpError(kPartialFunction) if some member of x is outside f's domain.
HfSet replacement_image(const HfSet& x, const MaterialFn& f, Path path = Path::kDirect);
/// Graph of z ↦ least member of z, over the members z of x.
HfSet choice_function(const HfSet& x, Path path = Path::kDirect);
/// The transitive set presented by a well-founded APG.
HfSet mostowski(const WfApg& apg);

// ---------------------------------------------------------------------------
// Recognizers used by the axiom checks.

/// (a, b) if s = {{a},{a,b}}.
std::optional<std::pair<HfSet, HfSet>> as_kpair(const HfSet& s);
/// f is a set of Kuratowski pairs forming a total function x → y.
bool is_material_function(const HfSet& f, const HfSet& x, const HfSet& y);
/// r ⊆ x × y relates every member of x to some member of y.
bool is_entire_relation(const HfSet& r, const HfSet& x, const HfSet& y);
/// Value of the function graph f at z, if f has a pair (z, _).
std::optional<HfSet> apply(const HfSet& f, const HfSet& z);
bool is_transitive(const HfSet& s);
bool is_subset(const HfSet& a, const HfSet& b);
/// x ∪ {x}.
HfSet successor(const HfSet& x);

}  // namespace matset
