#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "matset/setops.hpp"

namespace matset {

struct HarnessOptions {
  std::uint64_t seed = 1;
  /// Exhaustive inputs are the pure sets of rank < min(rank, 4); random
  /// inputs have rank ≤ rank.
  std::size_t rank = 4;
  std::size_t samples = 500;
  Path path = Path::kBoth;
  /// Replaces pairing by the pair surgery without the extensional quotient.
  bool mutant_pair_without_quotient = false;
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  /// First counterexample, in braces notation.
  std::string counterexample;
  std::size_t cases = 0;
};

struct HarnessReport {
  /// Ordered by suite name.
  std::vector<SuiteResult> suites;
  /// Distinct graphs on which the two bisimulation algorithms were compared.
  std::size_t graphs_compared = 0;

  bool passed() const;
  /// `PASS <suite>` or `FAIL <suite> <counterexample>` per suite, then a
  /// summary line.
  std::string to_string() const;
  /// 0 when every suite passed, 1 otherwise.
  int exit_code() const { return passed() ? 0 : 1; }
};

/// Runs the axiom suites: choice, delta0-separation, exponentiation,
/// extensionality, foundation, fullness, infinity, mostowski, pairing,
/// powerset, transitive-closure, union, plus bisimulation-oracle, which
/// compares partition refinement with the naive fixpoint on every surgery
/// graph the other suites build. Output depends only on the options.
HarnessReport run_harness(const HarnessOptions& options);

std::vector<std::string> harness_suite_names();

}  // namespace matset
