#pragma once

#include <cstddef>

#include "subrank/matrix.hpp"

namespace subrank {

// How the per-row residual is compared against epsilon:
//  kOriginalScale uses ||D_j|| * sin(angle to the anchor row), the actual
//  projection residual; kNormalizedSines compares the sine alone.
enum class RowThreshold { kOriginalScale, kNormalizedSines };

// S(i, j) = sin of the angle between rows i and j (diagonal exactly 0).
// Throws ZeroRowError when a row has zero norm.
DenseMatrix pairwise_sines(const DenseMatrix& d);

struct RowSubset {
  std::size_t anchor = 0;
  IndexSet rows;
};

// Largest set of rows within residual epsilon of a common anchor row.
// Anchors are tried exhaustively; ties prefer the smallest anchor index.
RowSubset largest_row_subset(
    const DenseMatrix& d, double epsilon,
    RowThreshold threshold = RowThreshold::kOriginalScale);

// Column counterpart (delegates to the transpose).
RowSubset largest_col_subset(
    const DenseMatrix& d, double epsilon,
    RowThreshold threshold = RowThreshold::kOriginalScale);

}  // namespace subrank
