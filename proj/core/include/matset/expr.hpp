#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "matset/canon.hpp"
#include "matset/logic.hpp"
#include "matset/setops.hpp"
#include "matset/syntax_error.hpp"

// Set expressions:
//
//   e ::= {e, ..., e} | @name | n | x | let x = e in e
//       | op(e, ...) | sep(e, x, "formula") | image(e, x, e)
//
// with op one of pair, union, kpair, prod, exp, mvexp, pow, tc, vn, omega,
// choice, ack, unack. vn, omega and unack take a natural; ack returns one.
namespace matset {

class SetExpr {
 public:
  enum class Kind { kLiteral, kAtom, kNatural, kVar, kLet, kApply, kSep, kImage };

  static SetExpr literal(std::vector<SetExpr> elements);
  static SetExpr atom(std::string name);
  static SetExpr natural(Natural n);
  static SetExpr var(std::string name);
  static SetExpr let(std::string name, SetExpr bound, SetExpr body);
  /// Throws std::invalid_argument for an unknown operation or wrong arity.
  static SetExpr apply(std::string op, std::vector<SetExpr> args);
  static SetExpr sep(SetExpr set, std::string var, Formula phi);
  static SetExpr image(SetExpr set, std::string var, SetExpr body);

  Kind kind() const;
  /// Atom, variable, bound or operation name.
  const std::string& name() const;
  const Natural& number() const;
  const std::vector<SetExpr>& args() const;
  const Formula& formula() const;

  friend bool operator==(const SetExpr& a, const SetExpr& b);

 private:
  struct Node;
  explicit SetExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws SyntaxError with a byte offset, or ScopeError for a formula or
/// expression variable that is not in scope.
SetExpr parse_expr(std::string_view text);

/// Re-parses to an equal expression.
std::string render(const SetExpr& e);

using Value = std::variant<HfSet, Natural>;

class ExprError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EvalOptions {
  Path path = Path::kDirect;
  /// Largest natural accepted by vn and omega.
  std::size_t max_numeral = 4096;
};

/// Errors from setops and logic propagate; type errors (a natural where a
/// set is expected and the reverse) raise ExprError.
Value eval_expr(const SetExpr& e, const EvalOptions& options = {});

std::string render(const Value& v);

}  // namespace matset
