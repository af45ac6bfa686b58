#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "matset/bisim.hpp"
#include "matset/canon.hpp"
#include "matset/dot.hpp"
#include "matset/expr.hpp"
#include "matset/harness.hpp"
#include "matset/random.hpp"
#include "matset/setops.hpp"
#include "oracles.hpp"

namespace matset {
namespace {

using oracle::numeral;

HfSet eval_set(const std::string& text, Path path = Path::kDirect) {
  return std::get<HfSet>(eval_expr(parse_expr(text), {path}));
}

/// Random expression over the variables in `scope`. Naturals appear only
/// where an operation takes one.
SetExpr random_expr(std::mt19937_64& rng, std::vector<std::string>& scope, int depth) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto leaf = [&]() -> SetExpr {
    switch (pick(scope.empty() ? 3 : 4)) {
      case 0: return SetExpr::literal({});
      case 1: return SetExpr::atom("a" + std::to_string(pick(3)));
      case 2: return SetExpr::apply("vn", {SetExpr::natural(pick(5))});
      default: return SetExpr::var(scope[pick(scope.size())]);
    }
  };
  if (depth <= 0) return leaf();
  auto sub = [&] { return random_expr(rng, scope, depth - 1); };
  switch (pick(10)) {
    case 0: return leaf();
    case 1: {
      std::vector<SetExpr> elements;
      for (std::size_t i = pick(4); i > 0; --i) elements.push_back(sub());
      return SetExpr::literal(std::move(elements));
    }
    case 2: {
      static const char* binary[] = {"pair", "kpair", "prod", "exp", "mvexp"};
      return SetExpr::apply(binary[pick(5)], {sub(), sub()});
    }
    case 3: {
      static const char* unary[] = {"union", "pow", "tc", "choice"};
      return SetExpr::apply(unary[pick(4)], {sub()});
    }
    case 4: return SetExpr::apply("omega", {SetExpr::natural(pick(6))});
    case 5: return SetExpr::apply("unack", {SetExpr::apply("ack", {sub()})});
    case 6: {
      std::string name = "x" + std::to_string(scope.size());
      SetExpr bound = sub();
      scope.push_back(name);
      SetExpr body = sub();
      scope.pop_back();
      return SetExpr::let(name, std::move(bound), std::move(body));
    }
    case 7: {
      std::string name = "x" + std::to_string(scope.size());
      SetExpr set = sub();
      scope.push_back(name);
      SetExpr body = sub();
      scope.pop_back();
      return SetExpr::image(std::move(set), name, std::move(body));
    }
    default: {
      std::string name = "x" + std::to_string(scope.size());
      SetExpr set = sub();
      std::vector<std::string> vars = scope;
      vars.push_back(name);
      const std::string& a = vars[pick(vars.size())];
      const std::string& b = vars[pick(vars.size())];
      Formula phi = pick(2) ? Formula::mem(a, b)
                            : Formula::exists_in("z", name, Formula::negate(Formula::eq("z", a)));
      return SetExpr::sep(std::move(set), name, std::move(phi));
    }
  }
}

TEST(ParseExpr, Examples) {
  SetExpr e = parse_expr("{}");
  EXPECT_EQ(e.kind(), SetExpr::Kind::kLiteral);
  EXPECT_TRUE(e.args().empty());

  SetExpr p = parse_expr("pow(vn(2))");
  EXPECT_EQ(p.kind(), SetExpr::Kind::kApply);
  EXPECT_EQ(p.name(), "pow");
  EXPECT_EQ(p.args()[0], SetExpr::apply("vn", {SetExpr::natural(2)}));

  SetExpr s = parse_expr("sep(vn(4), x, \"some z in x. true\")");
  EXPECT_EQ(s.kind(), SetExpr::Kind::kSep);
  EXPECT_EQ(s.name(), "x");
  EXPECT_EQ(s.formula(), parse_formula("some z in x. true"));
}

TEST(ParseExpr, Errors) {
  for (const char* bad : {"", "{", "{},", "pair({})", "pow({}, {})", "@", "let in = {} in in",
                          "sep({}, x, \"x =\")", "sep({}, x, \"true)", "vn(-1)"}) {
    EXPECT_THROW(parse_expr(bad), SyntaxError) << bad;
  }
  try {
    parse_expr("sep({}, x, \"x = = x\")");
    FAIL();
  } catch (const SyntaxError& e) {
    // Offsets point into the whole expression, past the opening quote.
    EXPECT_GE(e.position(), 12u);
  }
  EXPECT_THROW(parse_expr("union(y)"), ScopeError);
  // An unknown name is an unbound variable even when applied.
  EXPECT_THROW(parse_expr("frob({})"), ScopeError);
  EXPECT_THROW(parse_expr("sep({}, x, \"x in y\")"), ScopeError);
  EXPECT_NO_THROW(parse_expr("let y = {} in sep({}, x, \"x in y\")"));
  EXPECT_THROW(SetExpr::apply("pow", {}), std::invalid_argument);
}

TEST(ParseExpr, RoundTripOnGeneratedExpressions) {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> scope;
    SetExpr e = random_expr(rng, scope, 4);
    std::string text = render(e);
    EXPECT_EQ(parse_expr(text), e) << text;
  }
}

TEST(EvalExpr, Examples) {
  EXPECT_EQ(render(eval_expr(parse_expr("union(pair({},{{}}))"))), "{{}}");
  EXPECT_EQ(render(eval_expr(parse_expr("ack(vn(3))"))), "11");
  EXPECT_EQ(render(eval_expr(parse_expr("{}"))), "{}");
  EXPECT_EQ(eval_set("sep(vn(4), x, \"some z in x. true\")"), HfSet::set({numeral(1), numeral(2), numeral(3)}));
  EXPECT_EQ(eval_set("unack(2059)"), numeral(4));
  EXPECT_EQ(eval_set("let x = vn(2) in pair(x, x)"), HfSet::set({numeral(2)}));
  EXPECT_EQ(eval_set("image(vn(3), x, pow(x))").size(), 3u);
  EXPECT_EQ(eval_set("{@b, @a, @a}"), HfSet::set({HfSet::atom("a"), HfSet::atom("b")}));
  EXPECT_EQ(eval_set("omega(3)"), numeral(3));
  EXPECT_EQ(eval_set("exp(vn(2), vn(3))").size(), 9u);
  EXPECT_EQ(eval_set("mvexp(vn(2), vn(2))").size(), 9u);
  EXPECT_EQ(eval_set("prod(vn(2), vn(3))").size(), 6u);
  EXPECT_EQ(eval_set("tc({{{}}})"), HfSet::set({numeral(0), numeral(1)}));
  EXPECT_EQ(eval_set("choice({vn(1)})"), HfSet::set({oracle::kuratowski(numeral(1), numeral(0))}));
}

TEST(EvalExpr, Errors) {
  EXPECT_THROW(eval_expr(parse_expr("pow(3)")), ExprError);
  EXPECT_THROW(eval_expr(parse_expr("vn({})")), ExprError);
  EXPECT_THROW(eval_expr(parse_expr("vn(5000)")), ExprError);
  EXPECT_THROW(eval_expr(parse_expr("let n = 3 in sep({}, x, \"x in n\")")), ExprError);
  EXPECT_THROW(eval_expr(parse_expr("ack({@a})")), AckError);
  EXPECT_THROW(eval_expr(parse_expr("union(@a)")), SetOpError);
  EXPECT_THROW(eval_expr(parse_expr("choice({{}})")), SetOpError);
}

TEST(EvalExpr, PathsAgreeOnGeneratedExpressions) {
  std::mt19937_64 rng(137);
  std::size_t evaluated = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::string> scope;
    SetExpr e = random_expr(rng, scope, 3);
    Value direct;
    try {
      direct = eval_expr(e, {Path::kDirect});
    } catch (const std::exception&) {
      continue;  // Ill-typed or oversized inputs are expected from the generator.
    }
    EXPECT_EQ(eval_expr(e, {Path::kSurgery}), direct) << render(e);
    EXPECT_EQ(eval_expr(e, {Path::kBoth}), direct) << render(e);
    ++evaluated;
  }
  EXPECT_GT(evaluated, 100u);
}

TEST(EvalExpr, OutputIsCanonicalRendering) {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 200; ++trial) {
    HfSet s = random_set(rng, {4, 3, 2, 0.2});
    std::string text = render(s);
    EXPECT_EQ(render(eval_expr(parse_expr(text))), text);
  }
}

TEST(Dot, Examples) {
  const std::string empty = export_dot(to_apg(HfSet::empty()));
  EXPECT_EQ(empty, "digraph apg {\n  n0 [label=\"0\", shape=doublecircle];\n}\n");

  const std::string two = export_dot(to_apg(numeral(2)));
  std::size_t nodes = 0, edges = 0;
  for (std::size_t pos = 0; (pos = two.find("shape=", pos)) != std::string::npos; ++pos) ++nodes;
  for (std::size_t pos = 0; (pos = two.find(" -> ", pos)) != std::string::npos; ++pos) ++edges;
  EXPECT_EQ(nodes, 3u);
  EXPECT_EQ(edges, 3u);
  EXPECT_NE(two.find("n0 -> n1;"), std::string::npos);
  EXPECT_NE(two.find("n2 [label=\"2\", shape=doublecircle]"), std::string::npos);

  const std::string atom = export_dot(to_apg(HfSet::set({HfSet::atom("q\"x")})));
  EXPECT_NE(atom.find("@q\\\"x"), std::string::npos);
}

TEST(Dot, Deterministic) {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 20; ++trial) {
    WfApg a = random_apg(rng, {12, 20, 2, 0.3});
    WfApg copy = validate(a.graph(), a.root());
    EXPECT_EQ(export_dot(a), export_dot(copy));
  }
}

TEST(Harness, DefaultRunPasses) {
  HarnessReport r = run_harness({});
  EXPECT_TRUE(r.passed()) << r.to_string();
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.suites.size(), harness_suite_names().size());
  EXPECT_GT(r.graphs_compared, 1000u);
  for (std::size_t i = 0; i + 1 < r.suites.size(); ++i) EXPECT_LT(r.suites[i].name, r.suites[i + 1].name);
}

TEST(Harness, DegenerateRanksPass) {
  for (std::size_t rank : {0u, 1u, 2u}) {
    HarnessOptions o;
    o.rank = rank;
    o.samples = 50;
    HarnessReport r = run_harness(o);
    EXPECT_TRUE(r.passed()) << "rank " << rank << "\n" << r.to_string();
  }
}

TEST(Harness, ReproducibleForFixedOptions) {
  HarnessOptions o;
  o.seed = 99;
  o.samples = 100;
  EXPECT_EQ(run_harness(o).to_string(), run_harness(o).to_string());
  HarnessOptions other = o;
  other.path = Path::kSurgery;
  EXPECT_TRUE(run_harness(other).passed());
}

TEST(Harness, MutantPairingFails) {
  HarnessOptions o;
  o.samples = 50;
  o.mutant_pair_without_quotient = true;
  HarnessReport r = run_harness(o);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.exit_code(), 1);
  bool saw = false;
  for (const SuiteResult& s : r.suites) {
    if (s.name != "pairing") continue;
    saw = true;
    EXPECT_FALSE(s.passed);
    EXPECT_FALSE(s.counterexample.empty());
  }
  EXPECT_TRUE(saw);
  EXPECT_NE(r.to_string().find("FAIL pairing "), std::string::npos);
}

TEST(Random, DagsAreAcyclicWithRequestedSize) {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 100; ++trial) {
    RawGraph g = random_dag(rng, 30, 60);
    EXPECT_TRUE(is_acyclic(g));
    EXPECT_EQ(g.node_count(), 30u);
    EXPECT_EQ(g.edge_count(), 60u);
  }
  RawGraph saturated = random_dag(rng, 4, 100);
  EXPECT_EQ(saturated.edge_count(), 6u);
}

TEST(Random, ApgsAndSetsRespectOptions) {
  std::mt19937_64 rng(157);
  for (int trial = 0; trial < 100; ++trial) {
    WfApg a = random_apg(rng, {15, 30, 2, 0.5});
    EXPECT_EQ(a.node_count(), 15u);
    EXPECT_NO_THROW(validate(a.graph(), a.root()));
    HfSet s = random_set(rng, {5, 3, 2, 0.3});
    EXPECT_LE(rank(s), 5u);
    EXPECT_TRUE(s.is_set());
  }
  std::mt19937_64 r1(7), r2(7);
  EXPECT_EQ(random_set(r1, {}), random_set(r2, {}));
}

}  // namespace
}  // namespace matset
