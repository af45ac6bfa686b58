#include "matset/logic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <deque>
#include <mutex>

namespace matset {

struct Formula::Node {
  Kind kind;
  std::string a;
  std::string b;
  std::size_t rank = 0;
  std::optional<Formula> left;
  std::optional<Formula> right;
};

Formula Formula::make(Node node) { return Formula(std::make_shared<const Node>(std::move(node))); }

Formula Formula::eq(std::string lhs, std::string rhs) {
  return make({Kind::kEq, std::move(lhs), std::move(rhs), 0, {}, {}});
}
Formula Formula::mem(std::string element, std::string container) {
  return make({Kind::kMem, std::move(element), std::move(container), 0, {}, {}});
}
Formula Formula::is_set(std::string var) { return make({Kind::kIsSet, std::move(var), {}, 0, {}, {}}); }
Formula Formula::truth() { return make({Kind::kTrue, {}, {}, 0, {}, {}}); }
Formula Formula::falsity() { return make({Kind::kFalse, {}, {}, 0, {}, {}}); }
Formula Formula::conj(Formula lhs, Formula rhs) {
  return make({Kind::kAnd, {}, {}, 0, std::move(lhs), std::move(rhs)});
}
Formula Formula::disj(Formula lhs, Formula rhs) {
  return make({Kind::kOr, {}, {}, 0, std::move(lhs), std::move(rhs)});
}
Formula Formula::implies(Formula lhs, Formula rhs) {
  return make({Kind::kImplies, {}, {}, 0, std::move(lhs), std::move(rhs)});
}
Formula Formula::negate(Formula body) { return make({Kind::kNot, {}, {}, 0, std::move(body), {}}); }
Formula Formula::exists_in(std::string var, std::string bound, Formula body) {
  return make({Kind::kExistsIn, std::move(var), std::move(bound), 0, std::move(body), {}});
}
Formula Formula::forall_in(std::string var, std::string bound, Formula body) {
  return make({Kind::kForallIn, std::move(var), std::move(bound), 0, std::move(body), {}});
}
Formula Formula::exists_rank(std::string var, std::size_t rank, Formula body) {
  return make({Kind::kExistsRank, std::move(var), {}, rank, std::move(body), {}});
}
Formula Formula::forall_rank(std::string var, std::size_t rank, Formula body) {
  return make({Kind::kForallRank, std::move(var), {}, rank, std::move(body), {}});
}

Formula::Kind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::var() const noexcept { return node_->a; }
const std::string& Formula::other() const noexcept { return node_->b; }
std::size_t Formula::rank() const noexcept { return node_->rank; }

const Formula& Formula::lhs() const {
  if (!node_->left) throw std::logic_error("formula has no operand");
  return *node_->left;
}

const Formula& Formula::rhs() const {
  if (!node_->right) throw std::logic_error("formula has no right operand");
  return *node_->right;
}

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  return a.kind == b.kind && a.a == b.a && a.b == b.b && a.rank == b.rank && a.left == b.left &&
         a.right == b.right;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
  };
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kEq:
    case K::kMem:
      note(f.var());
      note(f.other());
      return;
    case K::kIsSet:
      note(f.var());
      return;
    case K::kTrue:
    case K::kFalse:
      return;
    case K::kAnd:
    case K::kOr:
    case K::kImplies:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
      return;
    case K::kNot:
      collect_free(f.lhs(), bound, out);
      return;
    case K::kExistsIn:
    case K::kForallIn:
      note(f.other());
      [[fallthrough]];
    case K::kExistsRank:
    case K::kForallRank:
      bound.push_back(f.var());
      collect_free(f.lhs(), bound, out);
      bound.pop_back();
      return;
  }
}

void print(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kEq: out += f.var() + " = " + f.other(); return;
    case K::kMem: out += f.var() + " in " + f.other(); return;
    case K::kIsSet: out += "isset " + f.var(); return;
    case K::kTrue: out += "true"; return;
    case K::kFalse: out += "false"; return;
    case K::kAnd:
    case K::kOr:
    case K::kImplies: {
      const char* op = f.kind() == K::kAnd ? " and " : f.kind() == K::kOr ? " or " : " -> ";
      out += '(';
      print(f.lhs(), out);
      out += op;
      print(f.rhs(), out);
      out += ')';
      return;
    }
    case K::kNot:
      out += "not ";
      print(f.lhs(), out);
      return;
    case K::kExistsIn:
    case K::kForallIn:
    case K::kExistsRank:
    case K::kForallRank: {
      const bool exists = f.kind() == K::kExistsIn || f.kind() == K::kExistsRank;
      const bool ranked = f.kind() == K::kExistsRank || f.kind() == K::kForallRank;
      out += exists ? "(some " : "(all ";
      out += f.var();
      out += ranked ? " rank " + std::to_string(f.rank()) : " in " + f.other();
      out += ". ";
      print(f.lhs(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::set<std::string> Formula::free_variables() const {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(*this, bound, out);
  return out;
}

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

namespace {

constexpr std::array<std::string_view, 10> kKeywords = {"in",    "and",  "or",  "not",  "true",
                                                        "false", "isset", "some", "all", "rank"};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = implication();
    skip_space();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void error(const std::string& message) const {
    throw SyntaxError(pos_, "formula:" + std::to_string(pos_) + ": " + message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view peek_word() {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() && (std::islower(static_cast<unsigned char>(text_[end])) ||
                                  std::isdigit(static_cast<unsigned char>(text_[end])) ||
                                  text_[end] == '_')) {
      ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  bool accept_word(std::string_view word) {
    if (peek_word() != word) return false;
    pos_ += word.size();
    return true;
  }

  bool accept(std::string_view symbol) {
    skip_space();
    if (text_.substr(pos_, symbol.size()) != symbol) return false;
    pos_ += symbol.size();
    return true;
  }

  void expect(std::string_view symbol) {
    if (!accept(symbol)) error("expected '" + std::string(symbol) + "'");
  }

  std::string identifier() {
    std::string_view word = peek_word();
    if (word.empty() || !std::islower(static_cast<unsigned char>(word[0])) || is_keyword(word)) {
      error("expected an identifier");
    }
    pos_ += word.size();
    return std::string(word);
  }

  std::size_t natural() {
    std::string_view word = peek_word();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (word.empty() || ec != std::errc{} || ptr != word.data() + word.size()) {
      error("expected a natural number");
    }
    pos_ += word.size();
    return value;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept_word("or")) f = Formula::disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept_word("and")) f = Formula::conj(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept_word("not")) return Formula::negate(unary());
    const bool some = peek_word() == "some";
    if (some || peek_word() == "all") {
      pos_ += some ? 4 : 3;
      std::string var = identifier();
      if (accept_word("in")) {
        std::string bound = identifier();
        expect(".");
        Formula body = implication();
        return some ? Formula::exists_in(var, bound, std::move(body))
                    : Formula::forall_in(var, bound, std::move(body));
      }
      if (accept_word("rank")) {
        std::size_t k = natural();
        expect(".");
        Formula body = implication();
        return some ? Formula::exists_rank(var, k, std::move(body))
                    : Formula::forall_rank(var, k, std::move(body));
      }
      error("expected 'in' or 'rank' after quantified variable");
    }
    return atomic();
  }

  Formula atomic() {
    if (accept("(")) {
      Formula f = implication();
      expect(")");
      return f;
    }
    if (accept_word("true")) return Formula::truth();
    if (accept_word("false")) return Formula::falsity();
    if (accept_word("isset")) return Formula::is_set(identifier());
    std::string lhs = identifier();
    if (accept_word("in")) return Formula::mem(lhs, identifier());
    if (accept("=")) return Formula::eq(lhs, identifier());
    error("expected '=' or 'in'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::optional<std::vector<std::string>>& free) {
  Formula f = FormulaParser(text).parse();
  if (free) {
    for (const std::string& v : f.free_variables()) {
      if (std::find(free->begin(), free->end(), v) == free->end()) throw ScopeError(v);
    }
  }
  return f;
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Env& env) : env_(env) {}

  bool run(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::kEq: return lookup(f.var()) == lookup(f.other());
      case K::kMem: return lookup(f.other()).contains(lookup(f.var()));
      case K::kIsSet: return lookup(f.var()).is_set();
      case K::kTrue: return true;
      case K::kFalse: return false;
      case K::kAnd: return run(f.lhs()) && run(f.rhs());
      case K::kOr: return run(f.lhs()) || run(f.rhs());
      case K::kImplies: return !run(f.lhs()) || run(f.rhs());
      case K::kNot: return !run(f.lhs());
      case K::kExistsIn:
      case K::kForallIn: {
        HfSet bound = lookup(f.other());
        if (bound.is_atom()) {
          throw EvalError(EvalError::Kind::kAtomBoundInQuantifier,
                          "quantifier bound '" + f.other() + "' is the atom " + render(bound));
        }
        return quantify(f, bound.members(), f.kind() == K::kExistsIn);
      }
      case K::kExistsRank:
      case K::kForallRank: {
        const auto& universe = rank_universe(f.rank());
        return quantify(f, universe, f.kind() == K::kExistsRank);
      }
    }
    return false;
  }

 private:
  static const std::vector<HfSet>& rank_universe(std::size_t k) {
    if (k > kDefaultMaxRank) {
      throw EvalError(EvalError::Kind::kRankTooLarge,
                      "rank bound " + std::to_string(k) + " exceeds " + std::to_string(kDefaultMaxRank));
    }
    return enumerate_rank(k);
  }

  bool quantify(const Formula& f, std::span<const HfSet> range, bool exists) {
    for (const HfSet& value : range) {
      stack_.emplace_back(f.var(), value);
      const bool holds = run(f.lhs());
      stack_.pop_back();
      if (holds == exists) return exists;
    }
    return !exists;
  }

  const HfSet& lookup(const std::string& name) const {
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    if (auto it = env_.find(name); it != env_.end()) return it->second;
    throw EvalError(EvalError::Kind::kUnboundVariable, "unbound variable '" + name + "'");
  }

  const Env& env_;
  std::vector<std::pair<std::string, HfSet>> stack_;
};

}  // namespace

bool eval(const Formula& phi, const Env& env) { return Evaluator(env).run(phi); }

const std::vector<HfSet>& enumerate_rank(std::size_t k, std::size_t max_rank) {
  if (k > max_rank || k > kDefaultMaxRank) {
    throw EvalError(EvalError::Kind::kRankTooLarge,
                    "enumerate_rank(" + std::to_string(k) + ") exceeds the configured maximum");
  }
  static std::mutex mu;
  static std::deque<std::vector<HfSet>> levels{std::vector<HfSet>{}};
  std::lock_guard<std::mutex> lock(mu);
  while (levels.size() <= k) {
    const std::vector<HfSet>& prev = levels.back();
    std::vector<HfSet> next;
    next.reserve(std::size_t{1} << prev.size());
    std::vector<HfSet> subset;
    for (std::size_t mask = 0; mask < (std::size_t{1} << prev.size()); ++mask) {
      subset.clear();
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if (mask >> i & 1) subset.push_back(prev[i]);
      }
      next.push_back(HfSet::set(subset));
    }
    std::sort(next.begin(), next.end(), [](const HfSet& a, const HfSet& b) { return compare(a, b) < 0; });
    levels.push_back(std::move(next));
  }
  return levels[k];
}

}  // namespace matset
