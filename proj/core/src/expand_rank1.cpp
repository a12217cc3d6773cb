#include "subrank/expand_rank1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace subrank {

namespace {

double guard_divisor(double v, double zero_guard) {
  if (std::abs(v) >= zero_guard) return v;
  return v < 0.0 ? -zero_guard : zero_guard;
}

// Maximum-cardinality subset of values fitting in a width-delta window that
// contains the anchor element.  Returns member positions.  Ties prefer the
// narrower window, then the earlier window in sorted order.  The anchor is
// always a member, so the result is never empty.
std::vector<std::size_t> widest_window(const std::vector<double>& values,
                                       std::size_t anchor, double delta) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::size_t anchor_pos = 0;
  for (std::size_t p = 0; p < n; ++p)
    if (order[p] == anchor) anchor_pos = p;

  std::size_t best_lo = anchor_pos, best_hi = anchor_pos;
  double best_range = 0.0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo <= anchor_pos; ++lo) {
    if (hi < lo) hi = lo;
    while (hi + 1 < n && values[order[hi + 1]] - values[order[lo]] <= delta)
      ++hi;
    if (hi < anchor_pos) continue;
    std::size_t size = hi - lo + 1;
    double range = values[order[hi]] - values[order[lo]];
    std::size_t best_size = best_hi - best_lo + 1;
    if (size > best_size || (size == best_size && range < best_range)) {
      best_lo = lo;
      best_hi = hi;
      best_range = range;
    }
  }
  std::vector<std::size_t> members(order.begin() + best_lo,
                                   order.begin() + best_hi + 1);
  return members;
}

}  // namespace

RatioMatrices ratio_matrices(const DenseMatrix& d, const Anchor& anchor,
                             double zero_guard) {
  if (anchor.row_index >= d.n_rows() || anchor.col_index >= d.n_cols())
    throw DimensionMismatchError("ratio_matrices: anchor out of range");
  const std::size_t n = d.n_rows(), m = d.n_cols();
  RatioMatrices out;
  out.zero_guard = zero_guard;
  out.guarded_anchor_row.resize(m);
  out.guarded_anchor_col.resize(n);
  for (std::size_t j = 0; j < m; ++j)
    out.guarded_anchor_row[j] = guard_divisor(d(anchor.row_index, j), zero_guard);
  for (std::size_t i = 0; i < n; ++i)
    out.guarded_anchor_col[i] = guard_divisor(d(i, anchor.col_index), zero_guard);
  out.row_ratios = DenseMatrix(n, m);
  out.col_ratios = DenseMatrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out.row_ratios(i, j) = d(i, j) / out.guarded_anchor_row[j];
      out.col_ratios(i, j) = d(i, j) / out.guarded_anchor_col[i];
    }
  }
  return out;
}

IndicatorMatrix row_indicator(const DenseMatrix& ratios,
                              std::size_t anchor_col, double delta) {
  if (anchor_col >= ratios.n_cols())
    throw DimensionMismatchError("row_indicator: anchor column out of range");
  IndicatorMatrix out(ratios.n_rows(), ratios.n_cols());
  std::vector<double> vals(ratios.n_cols());
  for (std::size_t i = 0; i < ratios.n_rows(); ++i) {
    auto r = ratios.row(i);
    std::copy(r.begin(), r.end(), vals.begin());
    for (std::size_t j : widest_window(vals, anchor_col, delta)) out.set(i, j);
  }
  return out;
}

IndicatorMatrix col_indicator(const DenseMatrix& ratios,
                              std::size_t anchor_row, double delta) {
  if (anchor_row >= ratios.n_rows())
    throw DimensionMismatchError("col_indicator: anchor row out of range");
  IndicatorMatrix out(ratios.n_rows(), ratios.n_cols());
  std::vector<double> vals(ratios.n_rows());
  for (std::size_t j = 0; j < ratios.n_cols(); ++j) {
    for (std::size_t i = 0; i < ratios.n_rows(); ++i) vals[i] = ratios(i, j);
    for (std::size_t i : widest_window(vals, anchor_row, delta)) out.set(i, j);
  }
  return out;
}

}  // namespace subrank
