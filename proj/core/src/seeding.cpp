#include "subrank/seeding.hpp"

#include <algorithm>
#include <cmath>

#include "subrank/errors.hpp"

namespace subrank {

double det_2x2(double a, double b, double c, double d) { return a * d - b * c; }

namespace {

// One candidate block: k+1 positions with pairwise distinct rows and columns.
// Collisions are rejected and redrawn; they do not count as samples.
void draw_block(const DenseMatrix& d, std::size_t k, RngStream& rng,
                std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
  rows.clear();
  cols.clear();
  const std::uint64_t n = d.n_rows();
  const std::uint64_t m = d.n_cols();
  while (rows.size() < k + 1) {
    std::uint64_t e = rng.uniform_below(n * m);
    std::size_t i = static_cast<std::size_t>(e / m);
    std::size_t j = static_cast<std::size_t>(e % m);
    if (std::find(rows.begin(), rows.end(), i) != rows.end()) continue;
    if (std::find(cols.begin(), cols.end(), j) != cols.end()) continue;
    rows.push_back(i);
    cols.push_back(j);
  }
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
}

}  // namespace

Seed sample_seed(const DenseMatrix& d, std::size_t k, const SeedPolicy& policy,
                 RngStream& rng) {
  if (k < 1) throw std::invalid_argument("sample_seed: k must be >= 1");
  if (d.n_rows() < k + 1 || d.n_cols() < k + 1)
    throw RankTooLargeError("sample_seed: matrix smaller than (k+1) block");

  std::vector<std::size_t> rows, cols;
  for (std::size_t s = 0; s < policy.max_samples; ++s) {
    double tol = policy.delta_init0 *
                 std::pow(policy.growth_factor,
                          static_cast<double>(s / policy.growth_period));
    draw_block(d, k, rng, rows, cols);
    double det;
    if (k == 1) {
      det = det_2x2(d(rows[0], cols[0]), d(rows[0], cols[1]),
                    d(rows[1], cols[0]), d(rows[1], cols[1]));
    } else {
      det = det_small(d.submatrix(IndexSet(rows), IndexSet(cols)));
    }
    if (std::abs(det) <= tol) {
      Seed seed;
      seed.row_indices = IndexSet(rows);
      seed.col_indices = IndexSet(cols);
      seed.det_value = det;
      seed.samples_consumed = s + 1;
      seed.final_delta_init = tol;
      return seed;
    }
  }
  throw ExhaustedError("sample_seed: draw budget exhausted");
}

}  // namespace subrank
