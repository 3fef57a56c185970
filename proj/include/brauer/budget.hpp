#pragma once

#include <cstdint>
#include <string>

namespace brauer {

/// Search limits standing in for the non-explicit constants of the
/// constructions. Every construction fails loudly with BudgetExceeded once a
/// limit is hit.
struct Budget {
  /// Maximum number of lines, planes or orthogonal vectors a construction may add.
  int dim = 32;
  /// Rejection-sampling attempts per search.
  long tries = 4000;
  /// Cap on points visited by any single exhaustive enumeration.
  long enum_points = 1L << 17;
  /// Cap on factor tuples visited by one strength search.
  long strength_nodes = 400000;
  /// Cap on nested construction calls (brauer_solve recursion, lowdeg recursion).
  int max_depth = 6;
  std::uint64_t seed = 1;

  /// Parses "dim=N,tries=N,enum=N,strength=N,depth=N" on top of the defaults.
  static Budget parse(const std::string& text);
  /// Defaults overridden by BRAUER_BUDGET_DEFAULT when set.
  static Budget from_env();
  std::string to_string() const;
  friend bool operator==(const Budget&, const Budget&) = default;
};

}  // namespace brauer
