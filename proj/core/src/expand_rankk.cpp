#include "subrank/expand_rankk.hpp"

#include <algorithm>
#include <cmath>

namespace subrank {

RankkIndicator extract_indicator(const DenseMatrix& d, const Seed& seed,
                                 std::size_t k, double delta, RngStream& rng) {
  if (!seed.row_indices.valid_for(d.n_rows()) ||
      !seed.col_indices.valid_for(d.n_cols()))
    throw DimensionMismatchError("extract_indicator: seed out of range");
  const std::size_t n = d.n_rows(), m = d.n_cols();

  DenseMatrix block = d.submatrix(seed.row_indices, seed.col_indices);
  std::size_t kprime = std::min(numerical_rank(block), k);

  std::vector<std::size_t> picks;
  rng.sample_distinct(seed.row_indices.size(), kprime,
                      std::back_inserter(picks));
  std::vector<std::size_t> anchor_rows;
  anchor_rows.reserve(kprime);
  for (std::size_t p : picks) anchor_rows.push_back(seed.row_indices[p]);
  std::sort(anchor_rows.begin(), anchor_rows.end());

  RankkIndicator out;
  out.row_expansion.anchor_rows = IndexSet(anchor_rows);
  out.row_expansion.seed_cols = seed.col_indices;

  // Fit coefficients on the seed columns only, then extend the anchor-row
  // combination across all columns.
  DenseMatrix basis = d.submatrix(out.row_expansion.anchor_rows,
                                  seed.col_indices);
  IndexSet all_rows;
  all_rows.indices.resize(n);
  for (std::size_t i = 0; i < n; ++i) all_rows.indices[i] = i;
  DenseMatrix targets = d.submatrix(all_rows, seed.col_indices);

  RowspaceProjection fit = project_onto_rowspace(targets, basis);
  // Dependent anchors may have been dropped inside the fit.
  std::vector<std::size_t> kept;
  kept.reserve(fit.kept_rows.size());
  for (std::size_t r : fit.kept_rows) kept.push_back(anchor_rows[r]);
  out.row_expansion.anchor_rows = IndexSet(kept);
  out.row_expansion.coeffs = fit.coeffs;

  const std::size_t ka = kept.size();
  out.row_expansion.projections = DenseMatrix(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < ka; ++r) {
      double c = fit.coeffs(i, r);
      if (c == 0.0) continue;
      auto arow = d.row(kept[r]);
      auto prow = out.row_expansion.projections.row(i);
      for (std::size_t j = 0; j < m; ++j) prow[j] += c * arow[j];
    }
  }
  out.row_expansion.abs_errors = DenseMatrix(n, m);
  out.indicator = IndicatorMatrix(n, m);
  const double cut = delta + kIndicatorSlack;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double e = std::abs(d(i, j) - out.row_expansion.projections(i, j));
      out.row_expansion.abs_errors(i, j) = e;
      if (e <= cut) out.indicator.set(i, j);
    }
  }
  return out;
}

CombinedIndicator combined_indicator(const DenseMatrix& d, const Seed& seed,
                                     std::size_t k, double delta,
                                     RngStream& rng) {
  RankkIndicator rows = extract_indicator(d, seed, k, delta, rng);
  Seed seed_t;
  seed_t.row_indices = seed.col_indices;
  seed_t.col_indices = seed.row_indices;
  seed_t.det_value = seed.det_value;
  seed_t.samples_consumed = seed.samples_consumed;
  seed_t.final_delta_init = seed.final_delta_init;
  RankkIndicator cols = extract_indicator(d.transpose(), seed_t, k, delta, rng);

  CombinedIndicator out;
  out.indicator = intersect(rows.indicator, cols.indicator.transpose());
  out.row_expansion = std::move(rows.row_expansion);
  out.col_expansion = std::move(cols.row_expansion);
  return out;
}

}  // namespace subrank
