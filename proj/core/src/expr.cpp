#include "matset/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

namespace matset {

namespace {

struct OpInfo {
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<OpInfo, 15> kOps{{
    {"pair", 2}, {"union", 1}, {"kpair", 2}, {"prod", 2}, {"exp", 2},   {"mvexp", 2}, {"pow", 1},   {"tc", 1},
    {"vn", 1},   {"omega", 1}, {"choice", 1}, {"ack", 1}, {"unack", 1}, {"sep", 3},   {"image", 3},
}};

const OpInfo* find_op(std::string_view name) {
  auto it = std::find_if(kOps.begin(), kOps.end(), [&](const OpInfo& op) { return op.name == name; });
  return it == kOps.end() ? nullptr : &*it;
}

bool is_reserved(std::string_view word) { return word == "let" || word == "in" || find_op(word) != nullptr; }

}  // namespace

struct SetExpr::Node {
  Kind kind;
  std::string name;
  Natural number;
  std::vector<SetExpr> args;
  std::optional<Formula> formula;
};

SetExpr SetExpr::literal(std::vector<SetExpr> elements) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::kLiteral, {}, {}, std::move(elements), {}}));
}

SetExpr SetExpr::atom(std::string name) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::kAtom, std::move(name), {}, {}, {}}));
}

SetExpr SetExpr::natural(Natural n) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::kNatural, {}, std::move(n), {}, {}}));
}

SetExpr SetExpr::var(std::string name) {
  return SetExpr(std::make_shared<const Node>(Node{Kind::kVar, std::move(name), {}, {}, {}}));
}

SetExpr SetExpr::let(std::string name, SetExpr bound, SetExpr body) {
  return SetExpr(std::make_shared<const Node>(
      Node{Kind::kLet, std::move(name), {}, {std::move(bound), std::move(body)}, {}}));
}

SetExpr SetExpr::apply(std::string op, std::vector<SetExpr> args) {
  const OpInfo* info = find_op(op);
  if (info == nullptr || op == "sep" || op == "image") {
    throw std::invalid_argument("unknown operation '" + op + "'");
  }
  if (args.size() != info->arity) {
    throw std::invalid_argument(op + " takes " + std::to_string(info->arity) + " argument(s)");
  }
  return SetExpr(std::make_shared<const Node>(Node{Kind::kApply, std::move(op), {}, std::move(args), {}}));
}

SetExpr SetExpr::sep(SetExpr set, std::string var, Formula phi) {
  return SetExpr(
      std::make_shared<const Node>(Node{Kind::kSep, std::move(var), {}, {std::move(set)}, std::move(phi)}));
}

SetExpr SetExpr::image(SetExpr set, std::string var, SetExpr body) {
  return SetExpr(std::make_shared<const Node>(
      Node{Kind::kImage, std::move(var), {}, {std::move(set), std::move(body)}, {}}));
}

SetExpr::Kind SetExpr::kind() const { return node_->kind; }
const std::string& SetExpr::name() const { return node_->name; }
const Natural& SetExpr::number() const { return node_->number; }
const std::vector<SetExpr>& SetExpr::args() const { return node_->args; }

const Formula& SetExpr::formula() const {
  if (!node_->formula) throw std::logic_error("expression has no formula");
  return *node_->formula;
}

bool operator==(const SetExpr& a, const SetExpr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.name == y.name && x.number == y.number && x.args == y.args &&
         x.formula == y.formula;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  SetExpr parse() {
    SetExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) error("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& message) const {
    throw SyntaxError(pos_, "expr:" + std::to_string(pos_) + ": " + message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_]))) {
      error("expected identifier");
    }
    while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                   std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string binder() {
    const std::size_t start = pos_;
    std::string name = identifier();
    if (is_reserved(name)) {
      pos_ = start;
      skip_space();
      error("'" + name + "' is reserved");
    }
    return name;
  }

  SetExpr expr() {
    skip_space();
    if (pos_ >= text_.size()) error("expected expression");
    const char c = text_[pos_];
    if (c == '{') return literal();
    if (c == '@') return atom();
    if (std::isdigit(static_cast<unsigned char>(c))) return natural();
    if (std::islower(static_cast<unsigned char>(c))) return word();
    error(std::string("unexpected '") + c + "'");
  }

  SetExpr literal() {
    expect('{');
    std::vector<SetExpr> elements;
    if (!accept('}')) {
      do {
        elements.push_back(expr());
      } while (accept(','));
      expect('}');
    }
    return SetExpr::literal(std::move(elements));
  }

  SetExpr atom() {
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == start) error("expected atom name after '@'");
    return SetExpr::atom(std::string(text_.substr(start, pos_ - start)));
  }

  SetExpr natural() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return SetExpr::natural(Natural(std::string(text_.substr(start, pos_ - start))));
  }

  SetExpr word() {
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == "let") {
      const std::string bound_name = binder();
      expect('=');
      SetExpr bound = expr();
      skip_space();
      if (identifier() != "in") error("expected 'in'");
      scope_.push_back(bound_name);
      SetExpr body = expr();
      scope_.pop_back();
      return SetExpr::let(bound_name, std::move(bound), std::move(body));
    }
    if (const OpInfo* op = find_op(name)) {
      expect('(');
      if (name == "sep") return sep();
      if (name == "image") return image();
      std::vector<SetExpr> args;
      do {
        args.push_back(expr());
      } while (accept(','));
      expect(')');
      if (args.size() != op->arity) {
        pos_ = start;
        error(name + " takes " + std::to_string(op->arity) + " argument(s)");
      }
      return SetExpr::apply(name, std::move(args));
    }
    if (name == "in") {
      pos_ = start;
      error("unexpected 'in'");
    }
    if (std::find(scope_.begin(), scope_.end(), name) == scope_.end()) throw ScopeError(name);
    return SetExpr::var(name);
  }

  SetExpr sep() {
    SetExpr set = expr();
    expect(',');
    const std::string var = binder();
    expect(',');
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '"') error("expected quoted formula");
    const std::size_t open = ++pos_;
    const std::size_t close = text_.find('"', open);
    if (close == std::string_view::npos) error("unterminated formula string");
    std::vector<std::string> free = scope_;
    free.push_back(var);
    std::optional<Formula> phi;
    try {
      phi = parse_formula(text_.substr(open, close - open), free);
    } catch (const SyntaxError& e) {
      throw SyntaxError(open + e.position(), std::string("expr:") + std::to_string(open + e.position()) +
                                                 ": in formula: " + e.what());
    }
    pos_ = close + 1;
    expect(')');
    return SetExpr::sep(std::move(set), var, std::move(*phi));
  }

  SetExpr image() {
    SetExpr set = expr();
    expect(',');
    const std::string var = binder();
    expect(',');
    scope_.push_back(var);
    SetExpr body = expr();
    scope_.pop_back();
    expect(')');
    return SetExpr::image(std::move(set), var, std::move(body));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

void render_to(const SetExpr& e, std::string& out) {
  switch (e.kind()) {
    case SetExpr::Kind::kLiteral: {
      out += '{';
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += ',';
        render_to(e.args()[i], out);
      }
      out += '}';
      return;
    }
    case SetExpr::Kind::kAtom: out += '@' + e.name(); return;
    case SetExpr::Kind::kNatural: out += e.number().str(); return;
    case SetExpr::Kind::kVar: out += e.name(); return;
    case SetExpr::Kind::kLet:
      out += "let " + e.name() + " = ";
      render_to(e.args()[0], out);
      out += " in ";
      render_to(e.args()[1], out);
      return;
    case SetExpr::Kind::kApply:
      out += e.name() + '(';
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += ", ";
        render_to(e.args()[i], out);
      }
      out += ')';
      return;
    case SetExpr::Kind::kSep:
      out += "sep(";
      render_to(e.args()[0], out);
      out += ", " + e.name() + ", \"" + e.formula().to_string() + "\")";
      return;
    case SetExpr::Kind::kImage:
      out += "image(";
      render_to(e.args()[0], out);
      out += ", " + e.name() + ", ";
      render_to(e.args()[1], out);
      out += ')';
      return;
  }
}

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& options) : options_(options) {}

  Value eval(const SetExpr& e) {
    switch (e.kind()) {
      case SetExpr::Kind::kLiteral: {
        std::vector<HfSet> members;
        for (const SetExpr& a : e.args()) members.push_back(set_of(a));
        return HfSet::set(std::move(members));
      }
      case SetExpr::Kind::kAtom: return HfSet::atom(e.name());
      case SetExpr::Kind::kNatural: return e.number();
      case SetExpr::Kind::kVar: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first == e.name()) return it->second;
        }
        throw ScopeError(e.name());
      }
      case SetExpr::Kind::kLet: {
        scope_.emplace_back(e.name(), eval(e.args()[0]));
        Value v = eval(e.args()[1]);
        scope_.pop_back();
        return v;
      }
      case SetExpr::Kind::kApply: return apply(e);
      case SetExpr::Kind::kSep: {
        const HfSet x = set_of(e.args()[0]);
        Env env;
        for (const auto& [name, value] : scope_) {
          if (const HfSet* s = std::get_if<HfSet>(&value)) env.insert_or_assign(name, *s);
        }
        for (const std::string& v : e.formula().free_variables()) {
          if (v != e.name() && !env.contains(v)) throw ExprError("formula variable '" + v + "' is a natural");
        }
        return separation(x, e.name(), e.formula(), env, options_.path);
      }
      case SetExpr::Kind::kImage: {
        const HfSet x = set_of(e.args()[0]);
        const SetExpr& body = e.args()[1];
        return replacement_image(
            x,
            SetFunction([&](const HfSet& a) {
              scope_.emplace_back(e.name(), a);
              HfSet v = set_of(body);
              scope_.pop_back();
              return v;
            }),
            options_.path);
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  HfSet set_of(const SetExpr& e) {
    Value v = eval(e);
    if (const HfSet* s = std::get_if<HfSet>(&v)) return *s;
    throw ExprError("expected a set, got the natural " + std::get<Natural>(v).str());
  }

  Natural natural_of(const SetExpr& e) {
    Value v = eval(e);
    if (const Natural* n = std::get_if<Natural>(&v)) return *n;
    throw ExprError("expected a natural, got the set " + render(std::get<HfSet>(v)));
  }

  std::size_t numeral_of(const SetExpr& e) {
    const Natural n = natural_of(e);
    if (n > options_.max_numeral) {
      throw ExprError(n.str() + " exceeds the numeral limit " + std::to_string(options_.max_numeral));
    }
    return n.convert_to<std::size_t>();
  }

  Value apply(const SetExpr& e) {
    const std::string& op = e.name();
    const auto& a = e.args();
    const Path path = options_.path;
    if (op == "pair") return pair(set_of(a[0]), set_of(a[1]), path);
    if (op == "union") return union_of(set_of(a[0]), path);
    if (op == "kpair") return kpair(set_of(a[0]), set_of(a[1]), path);
    if (op == "prod") return product(set_of(a[0]), set_of(a[1]), path);
    if (op == "exp") return func_space(set_of(a[0]), set_of(a[1]), path);
    if (op == "mvexp") return mv_func_space(set_of(a[0]), set_of(a[1]), path);
    if (op == "pow") return powerset(set_of(a[0]), path);
    if (op == "tc") return tc(set_of(a[0]), path);
    if (op == "vn") return vn(numeral_of(a[0]), path);
    if (op == "omega") return omega_upto(numeral_of(a[0]), path);
    if (op == "choice") return choice_function(set_of(a[0]), path);
    if (op == "ack") return ack_encode(set_of(a[0]));
    if (op == "unack") return ack_decode(natural_of(a[0]));
    throw std::logic_error("unknown operation " + op);
  }

  const EvalOptions& options_;
  std::vector<std::pair<std::string, Value>> scope_;
};

}  // namespace

SetExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

std::string render(const SetExpr& e) {
  std::string out;
  render_to(e, out);
  return out;
}

Value eval_expr(const SetExpr& e, const EvalOptions& options) { return Evaluator(options).eval(e); }

std::string render(const Value& v) {
  if (const HfSet* s = std::get_if<HfSet>(&v)) return render(*s);
  return std::get<Natural>(v).str();
}

}  // namespace matset
