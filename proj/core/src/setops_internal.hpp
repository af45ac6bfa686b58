#pragma once

#include <cmath>
#include <cstddef>

#include "matset/setops.hpp"

namespace matset::detail {

/// Upper bound on the member count of any constructed set.
inline constexpr std::size_t kMaxConstructedMembers = std::size_t{1} << 20;

void require_set(const HfSet& x, const char* op);
void require_size(double count, const char* op);
/// Member z of a choice argument must be a nonempty set.
void require_choosable(const HfSet& z);

}  // namespace matset::detail
