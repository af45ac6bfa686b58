#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "matset/canon.hpp"
#include "matset/syntax_error.hpp"

namespace matset {

/// Δ0 formulas over set variables, plus rank-bounded quantifiers standing in
/// for unbounded ones. Immutable; copies share structure.
class Formula {
 public:
  enum class Kind {
    kEq,
    kMem,
    kIsSet,
    kTrue,
    kFalse,
    kAnd,
    kOr,
    kImplies,
    kNot,
    kExistsIn,
    kForallIn,
    kExistsRank,
    kForallRank,
  };

  static Formula eq(std::string lhs, std::string rhs);
  /// `element in container`.
  static Formula mem(std::string element, std::string container);
  static Formula is_set(std::string var);
  static Formula truth();
  static Formula falsity();
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula negate(Formula body);
  static Formula exists_in(std::string var, std::string bound, Formula body);
  static Formula forall_in(std::string var, std::string bound, Formula body);
  static Formula exists_rank(std::string var, std::size_t rank, Formula body);
  static Formula forall_rank(std::string var, std::size_t rank, Formula body);

  Kind kind() const noexcept;
  /// Left variable of an atomic formula, or the quantified variable.
  const std::string& var() const noexcept;
  /// Right variable of an atomic formula, or the bounding variable.
  const std::string& other() const noexcept;
  std::size_t rank() const noexcept;
  /// Left operand, or the body of a negation or quantifier.
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::set<std::string> free_variables() const;

  /// Text in the formula grammar; `parse_formula(f.to_string()) == f`.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);

  std::shared_ptr<const Node> node_;
};

using Env = std::map<std::string, HfSet>;

class ScopeError : public std::invalid_argument {
 public:
  explicit ScopeError(std::string variable)
      : std::invalid_argument("variable '" + variable + "' is not in scope"),
        variable_(std::move(variable)) {}
  const std::string& variable() const noexcept { return variable_; }

 private:
  std::string variable_;
};

class EvalError : public std::runtime_error {
 public:
  enum class Kind { kUnboundVariable, kAtomBoundInQuantifier, kRankTooLarge };
  EvalError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// ASCII grammar, loosest binding first:
///
///   φ ::= ψ '->' φ | ψ
///   ψ ::= ψ 'or' ψ | ψ 'and' ψ | 'not' ψ
///       | ('some' | 'all') v 'in' x '.' φ
///       | ('some' | 'all') v 'rank' k '.' φ
///       | x '=' y | x 'in' y | 'isset' x | 'true' | 'false' | '(' φ ')'
///
/// 'and' binds tighter than 'or'; a quantifier body extends as far right as
/// possible. Identifiers match [a-z][a-z0-9_]*. When `free` is given, every
/// free variable must be listed there (ScopeError otherwise).
Formula parse_formula(std::string_view text,
                      const std::optional<std::vector<std::string>>& free = std::nullopt);

/// Classical truth value. Membership in an atom is false; quantifying over
/// an atom's members is an error.
bool eval(const Formula& phi, const Env& env);

inline constexpr std::size_t kDefaultMaxRank = 5;

/// All pure sets of rank < k (the k-th iterated powerset of the empty set),
/// ascending. Sizes 0, 1, 2, 4, 16, 65536 for k = 0..5. Cached.
const std::vector<HfSet>& enumerate_rank(std::size_t k, std::size_t max_rank = kDefaultMaxRank);

}  // namespace matset
