#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "subrank/biclique.hpp"
#include "subrank/bounds.hpp"
#include "subrank/expand_rank1.hpp"
#include "subrank/expand_rankk.hpp"
#include "subrank/matrix.hpp"
#include "subrank/seeding.hpp"

namespace subrank {

// Rank-1 factor x y^T whose basis row y is an actual row of the block; the
// coefficient at the basis row is exactly 1.
struct Rank1Factor {
  std::vector<double> coefficients;    // length = block rows
  std::vector<double> basis_row;       // length = block cols
  std::size_t basis_row_position = 0;  // row of the block serving as y

  bool operator==(const Rank1Factor&) const = default;
};

enum class FactorKind {
  kInterpretable,  // right factor rows are actual data rows
  kTruncatedSvd,
};

struct RankKFactor {
  DenseMatrix left;   // block rows x k
  DenseMatrix right;  // k x block cols
  FactorKind kind = FactorKind::kInterpretable;

  bool operator==(const RankKFactor&) const = default;
};

Rank1Factor interpretable_rank1(const DenseMatrix& x,
                                std::size_t basis_row_position);
RankKFactor truncated_svd_factor(const DenseMatrix& x, std::size_t k);

DenseMatrix reconstruct(const Rank1Factor& f);
DenseMatrix reconstruct(const RankKFactor& f);

struct DiscoveryConfig {
  std::size_t k = 1;
  std::size_t n_init = 25;
  double delta = 0.05;
  double lambda = 1.0;
  SeedPolicy seed_policy{};
  BicliqueStrategy biclique{};
  std::uint64_t master_seed = 0;
  // Standardize the size and error terms of the objective across the
  // candidate pool (skipped when fewer than two candidates).
  bool objective_standardize = true;
  // Report a truncated-SVD factor instead of the interpretable one.
  bool use_svd_factor = false;
  double zero_guard = 1e-12;
  std::size_t threads = 1;

  bool operator==(const DiscoveryConfig&) const = default;
};

struct DiscoveryResult {
  Submatrix submatrix;
  std::optional<Rank1Factor> rank1_factor;
  std::optional<RankKFactor> rankk_factor;
  double error_max = 0.0;
  double error_fro = 0.0;
  double error_spec = 0.0;
  // Window-expansion bounds evaluated on the anchor entries of the selected
  // block (k = 1 only); the _full variant uses the whole anchor row/column.
  std::optional<Rank1Bounds> bounds;
  std::optional<Rank1Bounds> bounds_full_anchor;
  std::optional<double> second_sv_bound;                    // k = 1 only
  std::optional<std::pair<double, double>> bounds_rank_k;   // k >= 2
  double objective = 0.0;  // |X| - (lambda/|X|) * ||E||_F^2, unstandardized
  Seed seed;
  std::optional<Anchor> anchor;  // k = 1 only
  std::size_t iteration_index = 0;
  bool biclique_exact = false;

  bool operator==(const DiscoveryResult&) const = default;
};

// Runs n_init independent seeded expansions of rank k and returns the
// submatrix with the best objective.  Deterministic for a fixed
// (matrix, config) pair, independent of the thread count.
DiscoveryResult discover(const DenseMatrix& d, const DiscoveryConfig& config);

struct MultiDiscovery {
  DenseMatrix estimate;  // accumulated factor values at discovered positions
  std::vector<DiscoveryResult> results;
};

// Repeats discovery n_patterns times, trying every rank in `ranks` per pass
// and keeping the best, then subtracts each reconstruction from the working
// copy so later passes see the residual.  Entries outside discovered blocks
// are never touched.
MultiDiscovery discover_multiple(const DenseMatrix& d,
                                 const std::vector<std::size_t>& ranks,
                                 std::size_t n_patterns,
                                 const DiscoveryConfig& config);

}  // namespace subrank
