#pragma once

#include <cstddef>
#include <random>

#include "matset/canon.hpp"
#include "matset/graph.hpp"

namespace matset {

/// A DAG on `nodes` nodes with `edges` distinct edges (fewer if the DAG is
/// saturated), drawn uniformly over a random topological order. Not
/// necessarily accessible.
RawGraph random_dag(std::mt19937_64& rng, std::size_t nodes, std::size_t edges);

/// A well-founded APG: every non-root node gets a parent higher in a random
/// topological order, then extra random edges bring the total to `edges`.
/// With `atom_names` > 0, each leaf is labeled with probability
/// `atom_probability` by one of @a0, @a1, ....
struct RandomApgOptions {
  std::size_t nodes = 10;
  std::size_t edges = 20;
  std::size_t atom_names = 0;
  double atom_probability = 0.0;
};
WfApg random_apg(std::mt19937_64& rng, const RandomApgOptions& options);

/// A random set of rank at most `max_rank` with at most `max_width` members
/// per level. Members are atoms @a0, @a1, ... with `atom_probability`.
struct RandomSetOptions {
  std::size_t max_rank = 4;
  std::size_t max_width = 3;
  std::size_t atom_names = 2;
  double atom_probability = 0.0;
};
HfSet random_set(std::mt19937_64& rng, const RandomSetOptions& options);

}  // namespace matset
