#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "matset/canon.hpp"
#include "matset/graph.hpp"
#include "matset/logic.hpp"

// Set constructions as graph surgery. Each `*_graph` builder assembles a
// well-founded APG from extensional input APGs; its extensional quotient
// presents the constructed set. Builders drop nodes that end up without a
// path to the new root. The `surgery::` value functions run the builder,
// take the extensional quotient and read off the canonical value.
namespace matset::surgery {

/// Z = X + Y + 1 with both old roots below the new one.
WfApg pair_graph(const WfApg& x, const WfApg& y);

/// Nodes reaching a member of a member, plus a root over the members of
/// members.
WfApg union_graph(const WfApg& x);

/// Z = X⫽⋆ + Y⫽⋆ + |X| + |X|×|Y| + |X|×|Y| + 1 realizing {x}, {x,y} and
/// {{x},{x,y}} for every member pair.
WfApg product_graph(const WfApg& x, const WfApg& y);

/// (X⊗Y)⫽⋆ + |Y|^|X| + 1 with (a,b)' below f whenever f(a) = b.
WfApg func_space_graph(const WfApg& x, const WfApg& y);

/// (X⊗Y)⫽⋆ + M + 1 with M all entire relations |X| → |Y|.
WfApg mv_func_space_graph(const WfApg& x, const WfApg& y);

/// X⫽⋆ + P|X| + 1 with a below A whenever a ∈ A.
WfApg powerset_graph(const WfApg& x);

/// X⫽⋆ + 1 with every non-root node below the new root.
WfApg tc_graph(const WfApg& x);

/// {0..k-1} ordered by < plus a root over all of them.
WfApg omega_graph(std::size_t k);

/// Root plus the nodes reaching one of `selected` (members of `x`).
WfApg separation_graph(const WfApg& x, std::span<const NodeId> selected);

/// Disjoint union of the images plus a root over their roots.
WfApg replacement_graph(std::span<const WfApg> images);

/// X⫽⋆ + |X| + |X| + |X| + 1 realizing {z}, {z, s(z)}, (z, s(z)) with s(z)
/// the least member of z.
WfApg choice_graph(const WfApg& x);

/// Reads an extensional APG. Throws std::logic_error if two nodes present
/// the same set, i.e. the graph was not extensional after all.
HfSet read_extensional(const WfApg& apg);

/// Extensional quotient followed by `read_extensional`.
HfSet collapse(const WfApg& apg);

HfSet pair(const HfSet& x, const HfSet& y);
HfSet union_of(const HfSet& x);
HfSet kpair(const HfSet& x, const HfSet& y);
HfSet product(const HfSet& x, const HfSet& y);
HfSet func_space(const HfSet& x, const HfSet& y);
HfSet mv_func_space(const HfSet& x, const HfSet& y);
HfSet powerset(const HfSet& x);
HfSet tc(const HfSet& x);
HfSet vn(std::size_t n);
HfSet omega_upto(std::size_t k);
HfSet separation(const HfSet& x, const std::string& var, const Formula& phi, const Env& env);
HfSet replacement_image(const HfSet& x, const std::function<HfSet(const HfSet&)>& f);
HfSet choice_function(const HfSet& x);

}  // namespace matset::surgery
