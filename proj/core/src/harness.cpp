#include "matset/harness.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "matset/bisim.hpp"
#include "matset/graph_io.hpp"
#include "matset/random.hpp"
#include "matset/surgery.hpp"

namespace matset {

namespace {

constexpr std::size_t kMaxExhaustiveRank = 4;
constexpr std::size_t kMaxExpSide = 3;
constexpr std::size_t kMaxPowMembers = 4;

struct Inputs {
  std::vector<HfSet> unary;
  std::vector<std::pair<HfSet, HfSet>> binary;
};

std::string show(const HfSet& x) { return render(x); }
std::string show(const HfSet& x, const HfSet& y) { return "(" + render(x) + ", " + render(y) + ")"; }

class Context {
  SuiteResult& result_;

 public:
  Context(SuiteResult& result, const Inputs& inputs, const HarnessOptions& options, std::uint64_t seed)
      : result_(result), inputs(inputs), options(options), rng(seed) {}

  bool failed() const { return !result_.passed; }

  /// Records one case; the first failing case is kept as the counterexample.
  void check(bool ok, const std::function<std::string()>& counterexample) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.counterexample = counterexample();
    }
  }

  /// Runs `body`, turning an escaping exception into a failure at `where`.
  void guarded(const std::string& where, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, [&] { return where + ": " + e.what(); });
    }
  }

  const Inputs& inputs;
  const HarnessOptions& options;
  std::mt19937_64 rng;
};

void suite_choice(Context& ctx) {
  for (const HfSet& x : ctx.inputs.unary) {
    if (ctx.failed()) return;
    const bool choosable = std::all_of(x.members().begin(), x.members().end(),
                                       [](const HfSet& z) { return z.is_set() && z.size() > 0; });
    if (!choosable) {
      bool rejected = false;
      try {
        choice_function(x, ctx.options.path);
      } catch (const SetOpError& e) {
        rejected = e.kind() == SetOpError::Kind::kEmptyMemberFound || e.kind() == SetOpError::Kind::kAtomMemberFound;
      }
      ctx.check(rejected, [&] { return show(x) + " has an empty or atom member but was accepted"; });
      continue;
    }
    ctx.guarded(show(x), [&] {
      const HfSet c = choice_function(x, ctx.options.path);
      bool ok = is_material_function(c, x, union_of(x));
      for (const HfSet& z : x.members()) ok = ok && apply(c, z).has_value() && z.contains(*apply(c, z));
      ctx.check(ok, [&] { return show(x) + " -> " + show(c); });
    });
  }
}

void suite_separation(Context& ctx) {
  static const char* const kFormulas[] = {
      "u = u",
      "isset u",
      "not (u = p)",
      "u in p",
      "p in u",
      "isset u and (all z in u. z in p)",
      "isset u and (some z in u. isset z and (some w in z. true))",
      "isset p -> (all z in p. not (z = u))",
      "some z rank 2. z in u",
      "all z rank 2. (z in u -> z in p)",
  };
  std::vector<Formula> formulas;
  for (const char* text : kFormulas) formulas.push_back(parse_formula(text, std::vector<std::string>{"u", "p"}));
  for (const auto& [x, y] : ctx.inputs.binary) {
    for (const Formula& phi : formulas) {
      if (ctx.failed()) return;
      ctx.guarded(show(x, y) + " with " + phi.to_string(), [&] {
        const Env env{{"p", y}};
        const HfSet s = separation(x, "u", phi, env, ctx.options.path);
        std::vector<HfSet> kept;
        Env local = env;
        for (const HfSet& m : x.members()) {
          local.insert_or_assign("u", m);
          if (eval(phi, local)) kept.push_back(m);
        }
        ctx.check(s == HfSet::set(kept) && is_subset(s, x),
                  [&] { return "sep(" + show(x) + ", u, \"" + phi.to_string() + "\") with p = " + show(y); });
      });
    }
  }
}

std::size_t power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) out *= base;
  return out;
}

void suite_exponentiation(Context& ctx) {
  for (const auto& [x, y] : ctx.inputs.binary) {
    if (ctx.failed()) return;
    if (x.size() > kMaxExpSide || y.size() > kMaxExpSide) continue;
    ctx.guarded(show(x, y), [&] {
      const HfSet f = func_space(x, y, ctx.options.path);
      bool ok = f.size() == power(y.size(), x.size());
      for (const HfSet& g : f.members()) ok = ok && is_material_function(g, x, y);
      ctx.check(ok, [&] { return "exp" + show(x, y) + " = " + show(f); });
    });
  }
}

void suite_extensionality(Context& ctx) {
  for (const auto& [x, y] : ctx.inputs.binary) {
    if (ctx.failed()) return;
    ctx.guarded(show(x, y), [&] {
      const bool same_members = is_subset(x, y) && is_subset(y, x);
      const bool isomorphic = iso(to_apg(x), to_apg(y)).has_value();
      ctx.check((x == y) == same_members && (x == y) == isomorphic, [&] { return show(x, y); });
    });
  }
  for (const HfSet& x : ctx.inputs.unary) {
    if (ctx.failed()) return;
    ctx.check(canonicalize(to_apg(x)) == x, [&] { return show(x); });
  }
}

void suite_foundation(Context& ctx) {
  const Formula self = parse_formula("some z in x. z = x", std::vector<std::string>{"x"});
  for (const HfSet& x : ctx.inputs.unary) {
    if (ctx.failed()) return;
    ctx.guarded(show(x), [&] {
      const WfApg apg = to_apg(x);
      const bool minimal_member =
          x.size() == 0 || std::any_of(x.members().begin(), x.members().end(), [&](const HfSet& z) {
            return z.is_atom() ||
                   std::none_of(z.members().begin(), z.members().end(), [&](const HfSet& w) { return x.contains(w); });
          });
      const NodeSubset strict = strict_part(apg);
      const bool minimal_node = strict.empty() || has_minimal_element(strict).has_value();
      ctx.check(is_acyclic(apg.graph()) && !x.contains(x) && !eval(self, {{"x", x}}) && minimal_member &&
                    minimal_node,
                [&] { return show(x); });
    });
  }
}

void suite_fullness(Context& ctx) {
  for (const auto& [x, y] : ctx.inputs.binary) {
    if (ctx.failed()) return;
    if (x.size() > kMaxExpSide || y.size() > kMaxExpSide) continue;
    ctx.guarded(show(x, y), [&] {
      const HfSet m = mv_func_space(x, y, ctx.options.path);
      bool ok = m.size() == power(power(2, y.size()) - 1, x.size());
      for (const HfSet& r : m.members()) ok = ok && is_entire_relation(r, x, y);
      ctx.check(ok, [&] { return "mvexp" + show(x, y) + " = " + show(m); });
      if (y.size() == 0 && x.size() > 0) return;
      // A random entire relation must contain some member of m.
      std::vector<HfSet> pairs;
      for (const HfSet& a : x.members()) {
        const std::size_t mask =
            std::uniform_int_distribution<std::size_t>(1, power(2, y.size()) - 1)(ctx.rng);
        for (std::size_t j = 0; j < y.size(); ++j) {
          if (mask >> j & 1) pairs.push_back(direct::kpair(a, y.members()[j]));
        }
      }
      const HfSet r = HfSet::set(std::move(pairs));
      const bool dominated =
          std::any_of(m.members().begin(), m.members().end(), [&](const HfSet& s) { return is_subset(s, r); });
      ctx.check(is_entire_relation(r, x, y) && dominated, [&] { return "relation " + show(r); });
    });
  }
}

void suite_infinity(Context& ctx) {
  const std::size_t top = ctx.options.rank + 2;
  for (std::size_t k = 0; k <= top; ++k) {
    if (ctx.failed()) return;
    ctx.guarded("omega(" + std::to_string(k) + ")", [&] {
      const HfSet w = omega_upto(k, ctx.options.path);
      bool ok = w.size() == k && is_transitive(w) && w == vn(k);
      if (k > 0) ok = ok && w.contains(HfSet::empty());
      for (std::size_t n = 0; n + 1 < k; ++n) ok = ok && w.contains(successor(vn(n)));
      ctx.check(ok, [&] { return "omega(" + std::to_string(k) + ") = " + show(w); });
    });
  }
}

std::vector<WfApg> mostowski_graphs(Context& ctx) {
  std::vector<WfApg> graphs;
  const std::size_t count = std::max<std::size_t>(ctx.options.samples / 5, 10);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t nodes = std::uniform_int_distribution<std::size_t>(1, 12)(ctx.rng);
    const std::size_t edges = std::uniform_int_distribution<std::size_t>(0, 2 * nodes)(ctx.rng);
    graphs.push_back(random_apg(ctx.rng, {nodes, edges, 2, 0.3}));
  }
  return graphs;
}

/// Graph file text on one line.
std::string describe(const WfApg& apg) {
  std::string text = format_graph(apg);
  while (!text.empty() && text.back() == '\n') text.pop_back();
  std::replace(text.begin(), text.end(), '\n', ';');
  return text;
}

void suite_mostowski(Context& ctx, const std::vector<WfApg>& graphs) {
  for (const WfApg& apg : graphs) {
    if (ctx.failed()) return;
    ctx.guarded(describe(apg), [&] {
      const HfSet m = mostowski(apg);
      const Quotient q = ext_quotient(apg);
      const bool ok = m == canonicalize(apg) && is_extensional(q.apg) && iso(q.apg, to_apg(m)).has_value() &&
                      mostowski(unfold_to_tree(apg, apg.node_count())) == m && is_simulation(q.map).ok;
      ctx.check(ok, [&] { return describe(apg) + " collapses to " + show(m); });
    });
  }
}

void suite_pairing(Context& ctx) {
  for (const auto& [x, y] : ctx.inputs.binary) {
    if (ctx.failed()) return;
    ctx.guarded(show(x, y), [&] {
      if (ctx.options.mutant_pair_without_quotient) {
        const WfApg g = surgery::pair_graph(to_apg(x), to_apg(y));
        const std::size_t expected = x == y ? 1 : 2;
        ctx.check(is_extensional(g) && g.children(g.root()).size() == expected,
                  [&] { return "pair" + show(x, y); });
        return;
      }
      const HfSet p = pair(x, y, ctx.options.path);
      const bool ok = p.contains(x) && p.contains(y) &&
                      std::all_of(p.members().begin(), p.members().end(),
                                  [&](const HfSet& m) { return m == x || m == y; });
      ctx.check(ok, [&] { return "pair" + show(x, y) + " = " + show(p); });
    });
  }
}

void suite_powerset(Context& ctx) {
  for (const HfSet& x : ctx.inputs.unary) {
    if (ctx.failed()) return;
    if (x.size() > kMaxPowMembers) continue;
    ctx.guarded(show(x), [&] {
      const HfSet p = powerset(x, ctx.options.path);
      bool ok = p.size() == power(2, x.size());
      for (const HfSet& s : p.members()) ok = ok && is_subset(s, x);
      for (std::size_t mask = 0; mask < power(2, x.size()); ++mask) {
        std::vector<HfSet> subset;
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (mask >> i & 1) subset.push_back(x.members()[i]);
        }
        ok = ok && p.contains(HfSet::set(std::move(subset)));
      }
      ctx.check(ok, [&] { return "pow" + show(x) + " = " + show(p); });
    });
  }
}

void suite_transitive_closure(Context& ctx) {
  std::vector<HfSet> candidates;
  for (const HfSet& x : ctx.inputs.unary) {
    if (is_transitive(x)) candidates.push_back(x);
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(ctx.inputs.unary.size(), 64); ++i) {
    candidates.push_back(direct::tc(ctx.inputs.unary[i]));
  }
  for (const HfSet& x : ctx.inputs.unary) {
    if (ctx.failed()) return;
    ctx.guarded(show(x), [&] {
      const HfSet t = tc(x, ctx.options.path);
      ctx.check(is_transitive(t) && is_subset(x, t), [&] { return "tc" + show(x) + " = " + show(t); });
      for (const HfSet& c : candidates) {
        if (is_transitive(c) && is_subset(x, c)) {
          ctx.check(is_subset(t, c), [&] { return "tc" + show(x) + " not below " + show(c); });
        }
      }
    });
  }
}

void suite_union(Context& ctx) {
  for (const HfSet& x : ctx.inputs.unary) {
    if (ctx.failed()) return;
    ctx.guarded(show(x), [&] {
      const HfSet u = union_of(x, ctx.options.path);
      bool ok = std::all_of(u.members().begin(), u.members().end(), [&](const HfSet& z) {
        return std::any_of(x.members().begin(), x.members().end(), [&](const HfSet& m) { return m.contains(z); });
      });
      for (const HfSet& m : x.members()) {
        for (const HfSet& z : m.members()) ok = ok && u.contains(z);
      }
      ctx.check(ok, [&] { return "union" + show(x) + " = " + show(u); });
    });
  }
}

/// Every surgery graph built from the shared inputs.
void suite_bisimulation(Context& ctx, const std::vector<WfApg>& extra, std::size_t& compared) {
  auto compare = [&](const WfApg& g, const std::string& what) {
    ++compared;
    ctx.check(max_bisim_refine(g.graph()) == max_bisim_naive(g.graph()), [&] { return what; });
  };
  for (const HfSet& x : ctx.inputs.unary) {
    if (ctx.failed()) return;
    ctx.guarded(show(x), [&] {
      const WfApg a = to_apg(x);
      compare(a, show(x));
      compare(surgery::union_graph(a), "union" + show(x));
      compare(surgery::tc_graph(a), "tc" + show(x));
      if (x.size() <= kMaxPowMembers) compare(surgery::powerset_graph(a), "pow" + show(x));
      const bool choosable = std::all_of(x.members().begin(), x.members().end(),
                                         [](const HfSet& z) { return z.is_set() && z.size() > 0; });
      if (choosable) compare(surgery::choice_graph(a), "choice" + show(x));
      std::vector<NodeId> selected;
      for (NodeId m : a.children(a.root())) {
        if (!a.is_labeled(m)) selected.push_back(m);
      }
      compare(surgery::separation_graph(a, selected), "sep" + show(x));
      std::vector<WfApg> images;
      for (const HfSet& m : x.members()) {
        if (m.is_set()) images.push_back(to_apg(successor(m)));
      }
      compare(surgery::replacement_graph(images), "image" + show(x));
    });
  }
  for (std::size_t k = 0; k <= ctx.options.rank + 2; ++k) {
    compare(surgery::omega_graph(k), "omega(" + std::to_string(k) + ")");
  }
  for (const auto& [x, y] : ctx.inputs.binary) {
    if (ctx.failed()) return;
    ctx.guarded(show(x, y), [&] {
      const WfApg a = to_apg(x);
      const WfApg b = to_apg(y);
      compare(surgery::pair_graph(a, b), "pair" + show(x, y));
      compare(surgery::product_graph(a, b), "prod" + show(x, y));
      if (x.size() <= kMaxExpSide && y.size() <= kMaxExpSide) {
        compare(surgery::func_space_graph(a, b), "exp" + show(x, y));
        compare(surgery::mv_func_space_graph(a, b), "mvexp" + show(x, y));
      }
    });
  }
  for (const WfApg& g : extra) {
    if (ctx.failed()) return;
    compare(g, "random graph with " + std::to_string(g.node_count()) + " nodes");
  }
}

Inputs make_inputs(const HarnessOptions& options, std::mt19937_64& rng) {
  Inputs in;
  const auto& universe = enumerate_rank(std::min(options.rank, kMaxExhaustiveRank));
  in.unary.assign(universe.begin(), universe.end());
  for (const HfSet& x : universe) {
    for (const HfSet& y : universe) in.binary.emplace_back(x, y);
  }
  const RandomSetOptions random{options.rank, 3, 2, 0.15};
  for (std::size_t i = 0; i < options.samples; ++i) in.unary.push_back(random_set(rng, random));
  for (std::size_t i = 0; i < options.samples; ++i) {
    HfSet x = random_set(rng, random);
    HfSet y = random_set(rng, random);
    in.binary.emplace_back(std::move(x), std::move(y));
  }
  return in;
}

}  // namespace

std::vector<std::string> harness_suite_names() {
  return {"bisimulation-oracle", "choice",    "delta0-separation", "exponentiation",     "extensionality",
          "foundation",          "fullness",  "infinity",          "mostowski",          "pairing",
          "powerset",            "transitive-closure", "union"};
}

HarnessReport run_harness(const HarnessOptions& options) {
  std::mt19937_64 master(options.seed);
  const Inputs inputs = make_inputs(options, master);
  const std::vector<std::string> names = harness_suite_names();
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < names.size(); ++i) seeds.push_back(master());

  HarnessReport report;
  report.suites.resize(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) report.suites[i].name = names[i];
  auto context = [&](std::size_t i) { return Context(report.suites[i], inputs, options, seeds[i]); };

  Context mostowski_ctx = context(8);
  const std::vector<WfApg> graphs = mostowski_graphs(mostowski_ctx);
  suite_mostowski(mostowski_ctx, graphs);

  Context bisim = context(0);
  suite_bisimulation(bisim, graphs, report.graphs_compared);
  Context c1 = context(1);
  suite_choice(c1);
  Context c2 = context(2);
  suite_separation(c2);
  Context c3 = context(3);
  suite_exponentiation(c3);
  Context c4 = context(4);
  suite_extensionality(c4);
  Context c5 = context(5);
  suite_foundation(c5);
  Context c6 = context(6);
  suite_fullness(c6);
  Context c7 = context(7);
  suite_infinity(c7);
  Context c9 = context(9);
  suite_pairing(c9);
  Context c10 = context(10);
  suite_powerset(c10);
  Context c11 = context(11);
  suite_transitive_closure(c11);
  Context c12 = context(12);
  suite_union(c12);
  return report;
}

bool HarnessReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

std::string HarnessReport::to_string() const {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const SuiteResult& s : suites) {
    if (s.passed) {
      out << "PASS " << s.name << "\n";
    } else {
      ++failed;
      out << "FAIL " << s.name << " " << s.counterexample << "\n";
    }
  }
  out << "summary: " << suites.size() - failed << " passed, " << failed << " failed\n";
  return out.str();
}

}  // namespace matset
