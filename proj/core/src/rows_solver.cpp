#include "subrank/rows_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace subrank {

DenseMatrix pairwise_sines(const DenseMatrix& d) {
  const std::size_t n = d.n_rows();
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = norm2(d.row(i));
    if (norms[i] == 0.0) throw ZeroRowError("pairwise_sines: zero row");
  }
  DenseMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double c = dot(d.row(i), d.row(j)) / (norms[i] * norms[j]);
      double sq = std::max(0.0, 1.0 - c * c);  // rounding can push c past 1
      s(i, j) = s(j, i) = std::sqrt(sq);
    }
  }
  return s;
}

RowSubset largest_row_subset(const DenseMatrix& d, double epsilon,
                             RowThreshold threshold) {
  const std::size_t n = d.n_rows();
  if (n == 0) throw DimensionMismatchError("largest_row_subset: no rows");
  DenseMatrix s = pairwise_sines(d);
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) norms[i] = norm2(d.row(i));

  RowSubset best;
  std::size_t best_count = 0;
  std::vector<std::size_t> members;
  for (std::size_t a = 0; a < n; ++a) {
    members.clear();
    for (std::size_t j = 0; j < n; ++j) {
      double residual = threshold == RowThreshold::kOriginalScale
                            ? norms[j] * s(a, j)
                            : s(a, j);
      if (residual <= epsilon) members.push_back(j);
    }
    if (members.size() > best_count) {
      best_count = members.size();
      best.anchor = a;
      best.rows = IndexSet(members);
    }
  }
  return best;
}

RowSubset largest_col_subset(const DenseMatrix& d, double epsilon,
                             RowThreshold threshold) {
  return largest_row_subset(d.transpose(), epsilon, threshold);
}

}  // namespace subrank
