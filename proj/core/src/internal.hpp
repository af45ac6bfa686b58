#pragma once

#include <memory>
#include <utility>

#include "matset/graph.hpp"

namespace matset {

/// Wraps a graph that is well-founded, accessible and label-sane by
/// construction, skipping `validate`. Callers own that guarantee.
struct WfApgAccess {
  static WfApg make(RawGraph graph, NodeId root) {
    return WfApg(std::make_shared<const RawGraph>(std::move(graph)), root);
  }
};

}  // namespace matset
