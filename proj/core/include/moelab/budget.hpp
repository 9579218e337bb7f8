#pragma once

#include <cstddef>

namespace moelab {

/// Enumeration guard shared by every operation that materializes group
/// elements or state-space bases. Operations throw BudgetError instead of
/// silently attempting huge allocations.
struct Budget {
  static constexpr std::size_t kDefault = 4096;

  std::size_t max_elements = kDefault;
};

}  // namespace moelab
