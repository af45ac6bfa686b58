#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "matset/bisim.hpp"
#include "matset/canon.hpp"
#include "matset/dot.hpp"
#include "matset/expr.hpp"
#include "matset/graph_io.hpp"
#include "matset/harness.hpp"

namespace {

using namespace matset;

constexpr int kExitUsage = 2;

HfSet eval_set(const std::string& text, const EvalOptions& options) {
  const Value v = eval_expr(parse_expr(text), options);
  if (const HfSet* s = std::get_if<HfSet>(&v)) return *s;
  throw ExprError("expected a set, got the natural " + render(v));
}

/// A graph file if `arg` names one, otherwise a set expression.
WfApg load_apg(const std::string& arg, const EvalOptions& options) {
  if (std::filesystem::is_regular_file(arg)) {
    GraphFile file = read_graph_file(arg);
    return validate(std::move(file.graph), file.root);
  }
  return to_apg(eval_set(arg, options));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hereditarily finite sets as accessible pointed graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  std::size_t rank = 4;
  std::uint64_t seed = 1;
  std::size_t samples = 500;
  bool surgery_only = false;
  bool direct_only = false;
  app.add_option("--rank", rank, "Rank bound for check")->capture_default_str();
  app.add_option("--seed", seed, "Seed for check")->capture_default_str();
  app.add_option("--samples", samples, "Random samples per check suite")->capture_default_str();
  auto* surgery_flag = app.add_flag("--surgery", surgery_only, "Construct by graph surgery only");
  app.add_flag("--direct", direct_only, "Construct directly on canonical values only")->excludes(surgery_flag);

  std::string expr_a;
  std::string expr_b;
  std::string natural;
  std::size_t k = 0;
  bool mutant = false;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a set expression");
  eval_cmd->add_option("expr", expr_a)->required();
  auto* iso_cmd = app.add_subcommand("iso", "Isomorphism of two APGs (graph files or expressions)");
  iso_cmd->add_option("a", expr_a)->required();
  iso_cmd->add_option("b", expr_b)->required();
  auto* member_cmd = app.add_subcommand("member", "Whether A is a member of B");
  member_cmd->add_option("a", expr_a)->required();
  member_cmd->add_option("b", expr_b)->required();
  auto* card_cmd = app.add_subcommand("card", "Number of members");
  card_cmd->add_option("a", expr_a)->required();
  auto* ack_cmd = app.add_subcommand("ack", "Ackermann code of a pure set");
  ack_cmd->add_option("a", expr_a)->required();
  auto* unack_cmd = app.add_subcommand("unack", "Pure set with the given Ackermann code");
  unack_cmd->add_option("n", natural)->required();
  auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of a graph file or expression");
  dot_cmd->add_option("file", expr_a)->required();
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Pure sets of rank below K");
  enumerate_cmd->add_option("k", k)->required();
  auto* check_cmd = app.add_subcommand("check", "Run the axiom harness");
  check_cmd->add_flag("--mutant-pair", mutant, "Use pairing without the extensional quotient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  EvalOptions options;
  options.path = surgery_only ? Path::kSurgery : direct_only ? Path::kDirect : Path::kBoth;

  try {
    if (*eval_cmd) {
      std::cout << render(eval_expr(parse_expr(expr_a), options)) << "\n";
    } else if (*iso_cmd) {
      const auto map = iso(load_apg(expr_a, options), load_apg(expr_b, options));
      if (!map) {
        std::cout << "not isomorphic\n";
      } else {
        std::cout << "isomorphic\n";
        for (std::size_t v = 0; v < map->map.size(); ++v) std::cout << v << " -> " << map->map[v] << "\n";
      }
    } else if (*member_cmd) {
      const HfSet a = eval_set(expr_a, options);
      const HfSet b = eval_set(expr_b, options);
      std::cout << (b.is_set() && b.contains(a) ? "true" : "false") << "\n";
    } else if (*card_cmd) {
      std::cout << eval_set(expr_a, options).size() << "\n";
    } else if (*ack_cmd) {
      std::cout << ack_encode(eval_set(expr_a, options)) << "\n";
    } else if (*unack_cmd) {
      if (natural.empty() || natural.find_first_not_of("0123456789") != std::string::npos) {
        std::cerr << "unack: expected a natural number\n";
        return kExitUsage;
      }
      std::cout << render(ack_decode(Natural(natural))) << "\n";
    } else if (*dot_cmd) {
      std::cout << export_dot(load_apg(expr_a, options));
    } else if (*enumerate_cmd) {
      for (const HfSet& s : enumerate_rank(k)) std::cout << render(s) << "\n";
    } else if (*check_cmd) {
      HarnessOptions h;
      h.seed = seed;
      h.rank = rank;
      h.samples = samples;
      h.path = options.path;
      h.mutant_pair_without_quotient = mutant;
      const HarnessReport report = run_harness(h);
      std::cout << report.to_string();
      return report.exit_code();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
