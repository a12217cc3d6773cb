#pragma once

#include <cstddef>

#include "subrank/indicator.hpp"
#include "subrank/matrix.hpp"

namespace subrank {

enum class BicliqueKind { kExact, kGreedyPeel, kSpectral };

struct BicliqueStrategy {
  BicliqueKind kind = BicliqueKind::kExact;
  // Exact search guards: node budget for the branch-and-bound tree, and a cap
  // on the enumerated dimension after isolated rows/columns are pruned.
  // Exceeding either falls back to GreedyPeel with exact = false.
  std::size_t exact_node_budget = 4000000;
  std::size_t exact_dim_limit = 64;
  // Return the raw spectral quadrant without the final peel.  The result may
  // then contain zero entries, so downstream error guarantees do not apply.
  bool spectral_raw_quadrant = false;

  bool operator==(const BicliqueStrategy&) const = default;
};

// All-ones block of the indicator (maximal edge count when exact is true).
struct Biclique {
  IndexSet rows;
  IndexSet cols;
  std::size_t edge_count = 0;
  bool exact = false;

  bool operator==(const Biclique&) const = default;
};

// Largest (or heuristically large) all-ones block.  Ties in the exact search
// prefer more rows, then the lexicographically smallest row set.  Throws
// EmptyIndicatorError when the indicator has no 1-bits.
Biclique solve(const IndicatorMatrix& indicator,
               const BicliqueStrategy& strategy);

// Exhaustive subset enumeration over the smaller dimension (must be <= 16).
Biclique brute_force_oracle(const IndicatorMatrix& indicator);

}  // namespace subrank
