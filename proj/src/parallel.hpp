#pragma once

// Loops shorter than this stay serial; thread start-up dominates below it.
#include <cstddef>

namespace fqmm::detail {

inline constexpr std::ptrdiff_t kParallelThreshold = 1 << 14;

}  // namespace fqmm::detail
