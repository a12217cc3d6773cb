#pragma once

#include <cstddef>

#include "subrank/indicator.hpp"
#include "subrank/matrix.hpp"
#include "subrank/rng.hpp"
#include "subrank/seeding.hpp"

namespace subrank {

// Row-direction expansion of a rank-k seed: anchor rows are sampled from the
// seed rows, every row of D is projected onto their span restricted to the
// seed columns, and the indicator marks entries reproduced within delta.
struct ProjectionExpansion {
  IndexSet anchor_rows;       // rows whose span approximates the others
  IndexSet seed_cols;         // columns used to fit the coefficients
  DenseMatrix coeffs;         // n x |anchor_rows|
  DenseMatrix projections;    // n x m, coeffs * D(anchor_rows, :)
  DenseMatrix abs_errors;     // |D - projections|
};

struct RankkIndicator {
  IndicatorMatrix indicator;
  ProjectionExpansion row_expansion;
};

// Numerical slack added to delta so entries reproduced to machine precision
// are never excluded by rounding.
inline constexpr double kIndicatorSlack = 1e-12;

// Marks entries of D whose row-direction projection error is within delta.
// k' = min(numerical rank of the seed block, k) anchor rows are sampled
// uniformly from the seed rows; a rank-deficient draw is repaired by dropping
// dependent rows, never by failing.
RankkIndicator extract_indicator(const DenseMatrix& d, const Seed& seed,
                                 std::size_t k, double delta, RngStream& rng);

// Conjunction of the row-direction indicator and the transposed
// column-direction indicator (computed on D^T with the seed transposed).
struct CombinedIndicator {
  IndicatorMatrix indicator;
  ProjectionExpansion row_expansion;
  ProjectionExpansion col_expansion;  // indices refer to D^T
};

CombinedIndicator combined_indicator(const DenseMatrix& d, const Seed& seed,
                                     std::size_t k, double delta,
                                     RngStream& rng);

}  // namespace subrank
