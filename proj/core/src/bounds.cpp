#include "subrank/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "subrank/errors.hpp"

namespace subrank {

double gmax(std::span<const double> x) {
  if (x.empty()) throw ZeroVectorError("gmax: empty vector");
  double max_abs = 0.0, min_sq = std::numeric_limits<double>::infinity();
  for (double v : x) {
    if (v == 0.0) throw ZeroEntryError("gmax: zero entry");
    max_abs = std::max(max_abs, std::abs(v));
    min_sq = std::min(min_sq, v * v);
  }
  return max_abs * max_abs * max_abs / (2.0 * min_sq);
}

double gf(std::span<const double> x) {
  double nsq = 0.0;
  for (double v : x) nsq += v * v;
  if (nsq == 0.0) throw ZeroVectorError("gf: zero norm");
  double pair_sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      pair_sum += x[i] * x[i] * x[j] * x[j];
  return pair_sum / nsq;
}

Rank1Bounds rank1_bounds(double delta, std::span<const double> x_row,
                         std::span<const double> x_col, std::size_t n,
                         std::size_t m) {
  if (n == 0 || m == 0)
    throw DimensionMismatchError("rank1_bounds: empty block");
  Rank1Bounds b;
  b.delta = delta;
  b.gmax_row = gmax(x_row);
  b.gmax_col = gmax(x_col);
  b.gf_row = gf(x_row);
  b.gf_col = gf(x_col);
  b.max_norm_bound = delta * std::min(b.gmax_row, b.gmax_col);
  double row_side = delta * std::sqrt(static_cast<double>(n - 1) * b.gf_row);
  double col_side = delta * std::sqrt(static_cast<double>(m - 1) * b.gf_col);
  b.fro_bound = std::min(row_side, col_side);
  return b;
}

std::pair<double, double> rank1_bounds_2x2(const DenseMatrix& p,
                                           double delta_init) {
  if (p.n_rows() != 2 || p.n_cols() != 2)
    throw DimensionMismatchError("rank1_bounds_2x2: block must be 2x2");
  double max_abs = 0.0, min_sq = std::numeric_limits<double>::infinity();
  for (double v : p.data()) {
    if (v == 0.0) throw ZeroEntryError("rank1_bounds_2x2: zero entry");
    max_abs = std::max(max_abs, std::abs(v));
    min_sq = std::min(min_sq, v * v);
  }
  double max_bound = delta_init * max_abs / (2.0 * min_sq);
  double gamma_max = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    gamma_max = std::max(gamma_max, norm2(p.row(i)));
    auto c = p.col(i);
    gamma_max = std::max(gamma_max, norm2(c));
  }
  double fro_bound = delta_init / gamma_max;
  return {max_bound, fro_bound};
}

std::pair<double, double> rankk_bounds(double delta, std::size_t n,
                                       std::size_t m, std::size_t k) {
  if (n <= k || m <= k)
    throw DegenerateDimsError("rankk_bounds: dimensions must exceed k");
  double cells = static_cast<double>(n - k) * static_cast<double>(m - k);
  return {delta, delta * std::sqrt(cells)};
}

namespace {

// One orientation of the second-singular-value bound: rows of x are compared
// against the anchor entries `anchor` (one value per row-vector component).
std::optional<double> svd_bound_side(const DenseMatrix& x, double delta,
                                     std::span<const double> anchor) {
  const std::size_t n = x.n_rows();
  if (n < 2) return std::nullopt;
  double gamma = 0.0;
  double min_row_sq = std::numeric_limits<double>::infinity();
  double max_row_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sq = dot(x.row(i), x.row(i));
    gamma += sq;
    min_row_sq = std::min(min_row_sq, sq);
    max_row_sq = std::max(max_row_sq, sq);
  }
  if (min_row_sq == 0.0) return std::nullopt;
  double anchor_nsq = 0.0, pair_sum = 0.0;
  for (double v : anchor) anchor_nsq += v * v;
  if (anchor_nsq == 0.0) return std::nullopt;
  for (std::size_t i = 0; i < anchor.size(); ++i)
    for (std::size_t j = i + 1; j < anchor.size(); ++j)
      pair_sum += anchor[i] * anchor[i] * anchor[j] * anchor[j];
  double omega = pair_sum / (anchor_nsq * min_row_sq);
  double tau = delta * delta * omega;
  double inner = 1.0 - 8.0 * max_row_sq * tau * (1.0 - tau);
  if (inner < 0.0) return std::nullopt;
  double nd = static_cast<double>(n);
  double outer = gamma * (nd - 1.0) / nd - (nd - 1.0) * std::sqrt(inner);
  if (outer < 0.0) return std::nullopt;
  return std::sqrt(outer);
}

}  // namespace

std::optional<double> svd_spectral_bound(const DenseMatrix& x, double delta,
                                         std::span<const double> x_row,
                                         std::span<const double> x_col) {
  std::optional<double> row_side = svd_bound_side(x, delta, x_row);
  std::optional<double> col_side =
      svd_bound_side(x.transpose(), delta, x_col);
  if (row_side && col_side) return std::min(*row_side, *col_side);
  return row_side ? row_side : col_side;
}

double delta_for_epsilon(double epsilon, std::span<const double> x_row,
                         std::span<const double> x_col, std::size_t n,
                         std::size_t m, BoundNorm norm) {
  if (x_row.empty() && x_col.empty())
    throw ZeroVectorError("delta_for_epsilon: both anchor sides empty");
  if (n == 0 || m == 0)
    throw DimensionMismatchError("delta_for_epsilon: empty block");
  double factor = std::numeric_limits<double>::infinity();
  if (norm == BoundNorm::kMax) {
    if (!x_row.empty()) factor = std::min(factor, gmax(x_row));
    if (!x_col.empty()) factor = std::min(factor, gmax(x_col));
  } else {
    if (!x_row.empty())
      factor = std::min(factor,
                        std::sqrt(static_cast<double>(n - 1) * gf(x_row)));
    if (!x_col.empty())
      factor = std::min(factor,
                        std::sqrt(static_cast<double>(m - 1) * gf(x_col)));
  }
  if (factor == 0.0) return std::numeric_limits<double>::infinity();
  return epsilon / factor;
}

double hit_probability(std::size_t target_size, std::size_t n, std::size_t m,
                       std::size_t k) {
  const std::size_t cells = n * m;
  if (target_size > cells)
    throw DimensionMismatchError("hit_probability: target exceeds matrix");
  if (cells < k + 1)
    throw RankTooLargeError("hit_probability: fewer cells than draws");
  if (target_size < k + 1) return 0.0;
  double p = 1.0;
  for (std::size_t h = 0; h <= k; ++h)
    p *= static_cast<double>(target_size - h) / static_cast<double>(cells - h);
  return p;
}

std::size_t required_iterations(double p, double alpha) {
  if (!(p > 0.0 && p < 1.0))
    throw InvalidProbabilityError("required_iterations: p outside (0, 1)");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw InvalidProbabilityError("required_iterations: alpha outside (0, 1)");
  double it = std::log1p(-alpha) / std::log1p(-p);
  return static_cast<std::size_t>(std::ceil(it));
}

double expected_iterations(double p) {
  if (!(p > 0.0 && p <= 1.0))
    throw InvalidProbabilityError("expected_iterations: p outside (0, 1]");
  return 1.0 / p;
}

double chebyshev_det_bound(double mean, double variance, double delta_init) {
  if (delta_init <= 0.0)
    throw InvalidProbabilityError("chebyshev_det_bound: delta_init <= 0");
  double s2 = variance;
  return (2.0 * s2 * s2 + 4.0 * mean * mean * s2) / (delta_init * delta_init);
}

ProbabilityPlan probability_plan(std::size_t target_size, std::size_t n,
                                 std::size_t m, std::size_t k, double alpha) {
  ProbabilityPlan plan;
  plan.hit_probability = hit_probability(target_size, n, m, k);
  plan.alpha = alpha;
  plan.required_iterations = required_iterations(plan.hit_probability, alpha);
  plan.expected_iterations = expected_iterations(plan.hit_probability);
  return plan;
}

}  // namespace subrank
