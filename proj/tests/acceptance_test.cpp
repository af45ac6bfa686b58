// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "matset/bisim.hpp"
#include "matset/canon.hpp"
#include "matset/fincat.hpp"
#include "matset/graph.hpp"
#include "matset/harness.hpp"
#include "matset/logic.hpp"
#include "matset/random.hpp"
#include "matset/setops.hpp"
#include "matset/surgery.hpp"
#include "oracles.hpp"

namespace {

using namespace matset;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Outcome of one criterion: empty `failure` means pass.
struct Outcome {
  std::string detail;
  std::string failure;
};

Outcome c1_harness() {
  const auto start = Clock::now();
  HarnessOptions options;
  options.rank = 4;
  options.samples = 500;
  HarnessReport report = run_harness(options);
  const double elapsed = seconds_since(start);

  const std::vector<std::string> required = {
      "choice",    "delta0-separation", "exponentiation", "extensionality", "foundation", "fullness",
      "infinity",  "mostowski",         "pairing",        "powerset",       "transitive-closure", "union"};
  std::set<std::string> present;
  for (const SuiteResult& s : report.suites) present.insert(s.name);

  std::ostringstream detail;
  detail << report.suites.size() << " suites in " << elapsed << " s";
  for (const std::string& name : required) {
    if (!present.contains(name)) return {detail.str(), "missing suite " + name};
  }
  if (!report.passed()) return {detail.str(), report.to_string()};
  if (elapsed >= 60.0) return {detail.str(), "over the 60 s budget"};
  return {detail.str(), ""};
}

Outcome c2_oracle_equivalence() {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> nodes(1, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = nodes(rng);
    RawGraph g = random_dag(rng, n, std::uniform_int_distribution<std::size_t>(0, 3 * n)(rng));
    if (max_bisim_refine(g) != max_bisim_naive(g)) {
      return {"", "random DAG " + std::to_string(trial) + " with " + std::to_string(n) + " nodes"};
    }
  }
  HarnessReport report = run_harness({});
  for (const SuiteResult& s : report.suites) {
    if (s.name == "bisimulation-oracle" && !s.passed) return {"", "harness graph " + s.counterexample};
  }
  if (report.graphs_compared == 0) return {"", "harness compared no graphs"};
  return {"1000 random DAGs + " + std::to_string(report.graphs_compared) + " harness graphs", ""};
}

Outcome c3_round_trip() {
  const auto& universe = enumerate_rank(4);
  if (universe.size() != 16) return {"", "enumerate_rank(4) has " + std::to_string(universe.size()) + " sets"};
  for (const HfSet& s : universe) {
    if (canonicalize(to_apg(s)) != s) return {"", render(s)};
  }
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    HfSet s = random_set(rng, {6, 3, 2, 0.15});
    if (canonicalize(to_apg(s)) != s) return {"", render(s)};
  }
  return {"16 exhaustive + 500 random (rank <= 6)", ""};
}

Outcome c4_surgery_agreement() {
  using Unary = std::function<HfSet(const HfSet&)>;
  using Binary = std::function<HfSet(const HfSet&, const HfSet&)>;
  const std::vector<std::pair<std::string, std::pair<Binary, Binary>>> binary = {
      {"pair", {surgery::pair, direct::pair}},
      {"product", {surgery::product, direct::product}},
      {"func_space", {surgery::func_space, direct::func_space}},
      {"mv_func_space", {surgery::mv_func_space, direct::mv_func_space}},
  };
  const std::vector<std::pair<std::string, std::pair<Unary, Unary>>> unary = {
      {"union", {surgery::union_of, direct::union_of}},
      {"powerset", {surgery::powerset, direct::powerset}},
      {"tc", {surgery::tc, direct::tc}},
  };

  std::vector<std::pair<HfSet, HfSet>> inputs;
  for (const HfSet& a : enumerate_rank(3)) {
    for (const HfSet& b : enumerate_rank(3)) inputs.push_back({a, b});
  }
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    HfSet a = random_set(rng, {4, 3, 2, 0.15});
    inputs.push_back({a, random_set(rng, {4, 3, 2, 0.15})});
  }

  std::size_t comparisons = 0;
  for (const auto& [a, b] : inputs) {
    for (const auto& [name, fns] : binary) {
      if (fns.first(a, b) != fns.second(a, b)) return {"", name + "(" + render(a) + ", " + render(b) + ")"};
      ++comparisons;
    }
    for (const auto& [name, fns] : unary) {
      if (fns.first(a) != fns.second(a)) return {"", name + "(" + render(a) + ")"};
      ++comparisons;
    }
  }
  return {std::to_string(inputs.size()) + " inputs, " + std::to_string(comparisons) + " comparisons", ""};
}

Outcome c5_cardinalities() {
  auto ipow = [](std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  for (std::size_t m = 0; m <= 4; ++m) {
    const std::size_t got = powerset(vn(m), Path::kBoth).size();
    if (got != ipow(2, m)) return {"", "|P(vn(" + std::to_string(m) + "))| = " + std::to_string(got)};
  }
  for (std::size_t m = 0; m <= 3; ++m) {
    for (std::size_t n = 0; n <= 3; ++n) {
      const HfSet x = vn(m), y = vn(n);
      const std::string at = " at m=" + std::to_string(m) + " n=" + std::to_string(n);
      if (product(x, y, Path::kBoth).size() != m * n) return {"", "product" + at};
      if (func_space(x, y, Path::kBoth).size() != ipow(n, m)) return {"", "func_space" + at};
      if (mv_func_space(x, y, Path::kBoth).size() != ipow(ipow(2, n) - 1, m)) return {"", "mv_func_space" + at};
    }
  }
  return {"m <= 4 powerset, m,n <= 3 otherwise, both paths", ""};
}

Outcome c6_ackermann() {
  for (std::uint64_t n = 0; n < (1u << 16); ++n) {
    HfSet s = ack_decode(Natural(n));
    if (s != oracle::unack(n) || ack_encode(s) != n) return {"", "code " + std::to_string(n)};
  }
  for (const HfSet& s : enumerate_rank(4)) {
    if (ack_decode(ack_encode(s)) != s || ack_encode(s) != oracle::ack(s)) return {"", render(s)};
  }
  const unsigned expected[] = {0, 1, 3, 11, 2059};
  for (std::size_t n = 0; n < 5; ++n) {
    if (ack_encode(vn(n)) != expected[n] || oracle::ack(oracle::numeral(n)) != expected[n]) {
      return {"", "ack(vn(" + std::to_string(n) + "))"};
    }
  }
  return {"65536 codes, 16 sets, vn(0..4) = 0 1 3 11 2059", ""};
}

Outcome c7_fincat() {
  // Objects: every subset with at most three members of a four-element pool
  // mixing pure sets and an atom.
  const HfSet pool[] = {vn(0), vn(1), HfSet::atom("a"), vn(2)};
  std::vector<fincat::FinObj> objects;
  for (unsigned mask = 0; mask < 16; ++mask) {
    std::vector<HfSet> members;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask >> i & 1) members.push_back(pool[i]);
    }
    if (members.size() <= 3) objects.emplace_back(HfSet::set(members));
  }
  fincat::Report laws = fincat::check_topos_laws(objects);
  fincat::Report pointed = fincat::check_well_pointed(objects);
  if (!laws.ok) return {"", laws.to_string()};
  if (!pointed.ok) return {"", pointed.to_string()};
  return {std::to_string(objects.size()) + " objects, " + std::to_string(laws.lines.size() + pointed.lines.size()) +
              " laws",
          ""};
}

std::vector<NodeId> subset_nodes(std::uint32_t mask, int n) {
  std::vector<NodeId> nodes;
  for (int v = 0; v < n; ++v) {
    if (mask >> v & 1) nodes.push_back(static_cast<NodeId>(v));
  }
  return nodes;
}

/// Library minimal-element check over all nonempty subsets.
bool library_every_subset_has_minimal(const RawGraph& g) {
  const int n = static_cast<int>(g.node_count());
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    if (!has_minimal_element(NodeSubset(g, subset_nodes(s, n)))) return false;
  }
  return true;
}

Outcome c8_well_foundedness() {
  std::size_t graphs = 0, acyclic = 0;
  for (int n = 1; n <= 5; ++n) {
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    for (std::uint64_t rel = 0; rel < total; ++rel) {
      oracle::BitGraph bits = oracle::bit_graph(n, rel);
      RawGraph g = oracle::to_raw(bits);
      const bool lib_acyclic = is_acyclic(g);
      const bool minimal = oracle::every_subset_has_minimal(bits);
      if (lib_acyclic != minimal) return {"", "n=" + std::to_string(n) + " relation " + std::to_string(rel)};
      if (n <= 4 && library_every_subset_has_minimal(g) != minimal) {
        return {"", "has_minimal_element at n=" + std::to_string(n) + " relation " + std::to_string(rel)};
      }
      ++graphs;
      acyclic += lib_acyclic;
    }
  }
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> size(6, 12);
  std::uniform_real_distribution<double> density(0.02, 0.3);
  const int random_graphs = 300;
  for (int trial = 0; trial < random_graphs; ++trial) {
    oracle::BitGraph bits = oracle::random_relation(rng, size(rng), density(rng));
    RawGraph g = oracle::to_raw(bits);
    const bool minimal = library_every_subset_has_minimal(g);
    if (is_acyclic(g) != minimal || oracle::every_subset_has_minimal(bits) != minimal) {
      return {"", "random graph " + std::to_string(trial)};
    }
  }
  return {std::to_string(graphs) + " graphs on <= 5 nodes (" + std::to_string(acyclic) + " acyclic) + " +
              std::to_string(random_graphs) + " random on <= 12",
          ""};
}

Outcome c9_performance() {
  std::mt19937_64 rng(9);
  WfApg apg = random_apg(rng, {100000, 300000, 0, 0.0});
  const auto start = Clock::now();
  Quotient q = ext_quotient(apg);
  const double elapsed = seconds_since(start);
  std::ostringstream detail;
  detail << apg.node_count() << " nodes, " << apg.edge_count() << " edges -> " << q.apg.node_count() << " in "
         << elapsed << " s";
  if (!oracle::is_stable(apg.graph(), max_bisim_refine(apg.graph()))) return {detail.str(), "unstable partition"};
  if (elapsed >= 2.0) return {detail.str(), "over the 2 s budget"};
  return {detail.str(), ""};
}

Outcome c10_unfolding() {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    HfSet s = random_set(rng, {5, 3, 2, 0.15});
    WfApg a = to_apg(s);
    if (mostowski(unfold_to_tree(a, a.node_count())) != s) return {"", render(s)};
  }
  return {"200 random sets (rank <= 5)", ""};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"axiom harness", c1_harness},
      {"refine = naive bisimulation", c2_oracle_equivalence},
      {"canonicalize/to_apg round trip", c3_round_trip},
      {"surgery = direct constructions", c4_surgery_agreement},
      {"cardinality laws", c5_cardinalities},
      {"Ackermann coding", c6_ackermann},
      {"finite category laws", c7_fincat},
      {"acyclic iff minimal elements", c8_well_foundedness},
      {"ext_quotient at 1e5 nodes", c9_performance},
      {"tree unfolding round trip", c10_unfolding},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.failure = std::string("exception: ") + e.what();
    }
    const bool pass = outcome.failure.empty();
    failures += !pass;
    std::printf("%s %2zu %s: %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                outcome.detail.c_str(), seconds_since(start), pass ? "" : " -- ", outcome.failure.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
