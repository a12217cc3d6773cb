#pragma once

#include <cstddef>

#include "subrank/indicator.hpp"
#include "subrank/matrix.hpp"

namespace subrank {

// Entry position acting as the reference row/column for ratio expansion.
struct Anchor {
  std::size_t row_index = 0;
  std::size_t col_index = 0;

  bool operator==(const Anchor&) const = default;
};

// row_ratios(i, j) = D(i, j) / x_r(j) where x_r is the anchor row;
// col_ratios(i, j) = D(i, j) / x_c(i) where x_c is the anchor column.
// Divisors with |v| < zero_guard are displaced to +/-zero_guard (sign kept,
// exact zeros displaced to +zero_guard) so every ratio stays finite.
struct RatioMatrices {
  DenseMatrix row_ratios;
  DenseMatrix col_ratios;
  std::vector<double> guarded_anchor_row;  // divisors actually used, length m
  std::vector<double> guarded_anchor_col;  // divisors actually used, length n
  double zero_guard = 0.0;
};

RatioMatrices ratio_matrices(const DenseMatrix& d, const Anchor& anchor,
                             double zero_guard = 1e-12);

// Per row of `ratios`, marks a maximum-cardinality set of columns whose
// values fit inside a window of width delta that contains the anchor column.
// Ties prefer the narrower window, then the smaller window start.
IndicatorMatrix row_indicator(const DenseMatrix& ratios,
                              std::size_t anchor_col, double delta);

// Column-wise counterpart: per column, marks rows within a delta window
// containing the anchor row.
IndicatorMatrix col_indicator(const DenseMatrix& ratios,
                              std::size_t anchor_row, double delta);

}  // namespace subrank
