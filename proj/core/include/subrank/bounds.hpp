#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

#include "subrank/matrix.hpp"

namespace subrank {

// max_i |x_i|^3 / (2 min_i x_i^2); every entry must be nonzero.
double gmax(std::span<const double> x);

// sum_{i<j} x_i^2 x_j^2 / ||x||_2^2; requires nonzero norm.
double gf(std::span<const double> x);

// A-priori error bounds for a rank-1 window expansion with tolerance delta,
// anchor row values x_row (length = block columns) and anchor column values
// x_col (length = block rows), over an n x m block.  Each bound is the
// smaller of its row- and column-side forms.
struct Rank1Bounds {
  double delta = 0.0;
  double gmax_row = 0.0, gmax_col = 0.0;
  double gf_row = 0.0, gf_col = 0.0;
  double max_norm_bound = 0.0;  // min(delta*gmax_row, delta*gmax_col)
  double fro_bound = 0.0;       // min over sides of delta*sqrt((dim-1)*gf)

  bool operator==(const Rank1Bounds&) const = default;
};

Rank1Bounds rank1_bounds(double delta, std::span<const double> x_row,
                         std::span<const double> x_col, std::size_t n,
                         std::size_t m);

// (max-norm bound, Frobenius bound) for a 2x2 block accepted at tolerance
// delta_init: delta_init * max|P_ij| / (2 min P_ij^2) and delta_init over the
// largest row/column norm.  Entries must be nonzero.
std::pair<double, double> rank1_bounds_2x2(const DenseMatrix& p,
                                           double delta_init);

// (max-norm bound, Frobenius bound) for a rank-k expansion: errors are within
// delta entrywise by construction, and at most (n-k)(m-k) entries are
// nonzero.
std::pair<double, double> rankk_bounds(double delta, std::size_t n,
                                       std::size_t m, std::size_t k);

// Upper bound on sigma_2 of the selected block (and hence on the spectral
// norm of its best rank-1 error).  Minimum of the row- and column-side forms;
// a side with a negative radicand is skipped, and nullopt means neither side
// applies.
std::optional<double> svd_spectral_bound(const DenseMatrix& x, double delta,
                                         std::span<const double> x_row,
                                         std::span<const double> x_col);

enum class BoundNorm { kMax, kFrobenius };

// Largest window tolerance whose bound stays below epsilon.  Either anchor
// side may be empty (disabled); +inf when the bound is zero for every delta.
double delta_for_epsilon(double epsilon, std::span<const double> x_row,
                         std::span<const double> x_col, std::size_t n,
                         std::size_t m, BoundNorm norm);

// Probability that k+1 uniformly drawn entry positions (distinct, in a
// matrix with n*m cells) all land inside a target block of the given size.
double hit_probability(std::size_t target_size, std::size_t n, std::size_t m,
                       std::size_t k);

// Smallest iteration count whose success probability reaches alpha when a
// single iteration succeeds with probability p.
std::size_t required_iterations(double p, double alpha);

double expected_iterations(double p);

// Chebyshev tail bound on |W| >= delta_init for W a 2x2 determinant of
// i.i.d. entries with the given mean and variance.  Returned raw; clamp to
// [0, 1] for reporting.
double chebyshev_det_bound(double mean, double variance, double delta_init);

struct ProbabilityPlan {
  double hit_probability = 0.0;
  double alpha = 0.0;
  std::size_t required_iterations = 0;
  double expected_iterations = 0.0;
};

ProbabilityPlan probability_plan(std::size_t target_size, std::size_t n,
                                 std::size_t m, std::size_t k, double alpha);

}  // namespace subrank
