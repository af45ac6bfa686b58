#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matset/canon.hpp"
#include "matset/logic.hpp"

// The category of canonical hereditarily finite sets and functions between
// them. Morphisms are tables over the canonically sorted members of the
// domain, so equal morphisms compare equal.
namespace matset::fincat {

class FincatError : public std::invalid_argument {
 public:
  enum class Kind { kNotASet, kInvalidMorphism, kDomainMismatch, kNotASubset, kNotEquivalenceRelation,
                    kNotSurjective, kTooLarge };
  FincatError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class FinObj {
 public:
  /// The empty object.
  FinObj() = default;
  /// Throws FincatError(kNotASet) for an atom.
  explicit FinObj(HfSet carrier);

  const HfSet& carrier() const noexcept { return carrier_; }
  std::span<const HfSet> members() const noexcept { return carrier_.members(); }
  std::size_t size() const noexcept { return carrier_.size(); }
  /// Position of `element` among the sorted members.
  std::optional<std::size_t> index_of(const HfSet& element) const;

  friend bool operator==(const FinObj&, const FinObj&) = default;

 private:
  HfSet carrier_;
};

class FinMor {
 public:
  /// `table[i]` is the index in `cod` of the image of the i-th member of
  /// `dom`. Throws FincatError(kInvalidMorphism) if the table is not total or
  /// leaves `cod`.
  FinMor(FinObj dom, FinObj cod, std::vector<std::uint32_t> table);

  /// From a set of Kuratowski pairs forming a total function dom → cod.
  static FinMor from_graph(FinObj dom, FinObj cod, const HfSet& graph);

  const FinObj& dom() const noexcept { return dom_; }
  const FinObj& cod() const noexcept { return cod_; }
  std::span<const std::uint32_t> table() const noexcept { return table_; }
  std::uint32_t operator[](std::size_t i) const { return table_.at(i); }
  /// Throws FincatError(kInvalidMorphism) outside the domain.
  HfSet apply(const HfSet& element) const;
  /// The set of pairs (x, f(x)).
  HfSet graph() const;

  bool is_injective() const;
  bool is_surjective() const;

  friend bool operator==(const FinMor&, const FinMor&) = default;

 private:
  FinObj dom_;
  FinObj cod_;
  std::vector<std::uint32_t> table_;
};

/// A subset of the members of an object, as a membership mask.
class SubObj {
 public:
  SubObj(FinObj of, std::vector<bool> mask);
  /// Throws FincatError(kNotASubset) unless `subset` ⊆ `of`.
  static SubObj from_set(FinObj of, const HfSet& subset);
  static SubObj full(FinObj of);
  static SubObj none(FinObj of);

  const FinObj& of() const noexcept { return of_; }
  const std::vector<bool>& mask() const noexcept { return mask_; }
  bool contains(std::size_t i) const { return mask_.at(i); }
  std::size_t size() const;
  HfSet carrier() const;
  FinObj object() const { return FinObj(carrier()); }
  FinMor inclusion() const;

  friend bool operator==(const SubObj&, const SubObj&) = default;

 private:
  FinObj of_;
  std::vector<bool> mask_;
};

std::string render(const FinMor& f);
std::string render(const SubObj& s);

/// g ∘ f. Throws FincatError(kDomainMismatch) unless cod(f) = dom(g).
FinMor compose(const FinMor& g, const FinMor& f);
FinMor identity(const FinObj& a);

FinObj initial();
/// {∅}.
FinObj terminal();
FinMor to_terminal(const FinObj& a);
FinMor from_initial(const FinObj& a);

/// Every morphism a → b in table order. Throws kTooLarge past 2^20.
std::vector<FinMor> hom(const FinObj& a, const FinObj& b);
/// Global elements 1 → a.
std::vector<FinMor> elements(const FinObj& a);
/// The global element picking the i-th member.
FinMor element(const FinObj& a, std::size_t i);

/// Left-cancellable against all pairs of maps from test objects of size ≤ 2.
bool is_mono(const FinMor& f);
/// Coequalizes its kernel pair, and every map that does factors uniquely
/// through f; checked against codomains of size ≤ 2.
bool is_regular_epi(const FinMor& f);
/// Has a two-sided inverse.
std::optional<FinMor> inverse(const FinMor& f);
/// Exactly one morphism into each object of `tests`.
bool is_initial(const FinObj& a, std::span<const FinObj> tests);

struct ImageFactor {
  FinMor epi;
  FinMor mono;
};
ImageFactor image_factor(const FinMor& f);

struct Product {
  FinObj obj;
  FinMor p1;
  FinMor p2;
};
/// Carrier is the set of Kuratowski pairs.
Product product_obj(const FinObj& a, const FinObj& b);
/// ⟨f, g⟩ : c → a × b.
FinMor pairing(const FinMor& f, const FinMor& g);
/// f × g : a × b → a' × b'.
FinMor product_map(const FinMor& f, const FinMor& g);

struct Equalizer {
  FinObj obj;
  FinMor incl;
};
Equalizer equalizer(const FinMor& f, const FinMor& g);

struct Coproduct {
  FinObj obj;
  FinMor i1;
  FinMor i2;
};
/// Members (0, x) for x ∈ a and (1, y) for y ∈ b.
Coproduct coproduct(const FinObj& a, const FinObj& b);
/// [f, g] : a + b → c.
FinMor copairing(const Coproduct& sum, const FinMor& f, const FinMor& g);

struct KernelQuotient {
  FinObj obj;
  FinMor proj;
};
/// Quotient of `a` by an equivalence relation given as a subobject of a × a.
/// Classes are the sets of related members.
KernelQuotient quotient_kernel(const FinObj& a, const SubObj& relation);
/// {(x, y) : f(x) = f(y)} as a subobject of dom × dom.
SubObj kernel_pair(const FinMor& f);

SubObj sub_union(const SubObj& s, const SubObj& t);
SubObj sub_intersection(const SubObj& s, const SubObj& t);
SubObj complement(const SubObj& s);
bool sub_le(const SubObj& s, const SubObj& t);
/// f*(t) for t a subobject of cod(f).
SubObj inverse_image(const FinMor& f, const SubObj& t);
/// ∃_f(s): the image of s.
SubObj exists_image(const FinMor& f, const SubObj& s);
/// ∀_f(s) = { y : f⁻¹(y) ⊆ s }.
SubObj dual_image(const FinMor& f, const SubObj& s);
/// Every subobject of `a`.
std::vector<SubObj> subobjects(const FinObj& a);
/// Members x of `a` with `phi` true when `var` is bound to x.
SubObj separate(const FinObj& a, const std::string& var, const Formula& phi, const Env& env = {});

struct PowerObject {
  FinObj obj;
  /// ∈_a as a subobject of a × P(a).
  SubObj membership;
};
PowerObject power_object(const FinObj& a);
/// The global element of P(a) naming `s`.
FinMor classify(const PowerObject& power, const SubObj& s);
/// Pullback of the membership relation along id × g.
SubObj classified_by(const PowerObject& power, const FinObj& a, const FinMor& g);

struct Exponential {
  FinObj obj;
  /// b^a × a → b.
  FinMor eval;
  FinObj base;
  FinObj exponent;
};
Exponential exponential_obj(const FinObj& a, const FinObj& b);
/// The unique z : c → b^a with eval ∘ (z × id) = h, for h : c × a → b.
FinMor transpose(const Exponential& e, const FinObj& c, const FinMor& h);
/// eval ∘ (z × id_a).
FinMor untranspose(const Exponential& e, const FinMor& z);

/// A section s with f ∘ s = id, choosing least preimages. Throws
/// FincatError(kNotSurjective).
FinMor section(const FinMor& f);

struct Report {
  std::vector<std::string> lines;
  bool ok = true;

  void record(const std::string& law, const std::optional<std::string>& counterexample);
  std::string to_string() const;
};

/// Terminal object checks on `sample`: bijective-on-elements monos are iso,
/// surjections onto 1 split, 1 is indecomposable, no map 1 → 0.
Report check_well_pointed(std::span<const FinObj> sample);

/// Element-level characterizations, epi splitting, complements, power
/// objects and exponential transposes, exhaustively over `objects` and all
/// morphisms between them.
Report check_topos_laws(std::span<const FinObj> objects);

}  // namespace matset::fincat
