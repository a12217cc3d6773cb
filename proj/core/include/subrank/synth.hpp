#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "subrank/indicator.hpp"
#include "subrank/matrix.hpp"
#include "subrank/rng.hpp"

namespace subrank {

enum class Distribution {
  kStandardNormal,
  kUniform01,
  kExponential1,
  kBeta23,     // Beta(2, 3)
  kGamma21,    // shape 2, scale 1
  kPoisson5,
};

double draw(Distribution dist, RngStream& rng);
double distribution_mean(Distribution dist);

// One planted block: an outer product x y^T of i.i.d. draws plus centered
// noise scaled by eps_noise, placed at uniformly chosen row/column indices
// inside an n x m host whose remaining entries are resampled uniformly (with
// replacement) from the noisy block entries.
struct PlantSpec {
  std::size_t n = 0, m = 0;      // host matrix
  std::size_t n_p = 0, m_p = 0;  // planted block
  Distribution distribution = Distribution::kStandardNormal;
  double eps_noise = 1e-5;
  std::uint64_t master_seed = 0;

  bool operator==(const PlantSpec&) const = default;
};

struct GroundTruth {
  std::vector<IndicatorMatrix> masks;  // one n x m mask per planted block
};

std::pair<DenseMatrix, GroundTruth> plant_single(const PlantSpec& spec,
                                                 RngStream& rng);

// Several blocks in one host (all specs must agree on n, m).  Overlapping
// blocks add; the background is resampled from the pooled block entries.
// With a single spec this reproduces plant_single draw for draw.
std::pair<DenseMatrix, GroundTruth> plant_multiple(
    const std::vector<PlantSpec>& specs, RngStream& rng);

// 2TP / (2TP + FP + FN) over entry masks; defined as 1 when both are empty.
double f1_score(const IndicatorMatrix& predicted, const IndicatorMatrix& truth);

// ||X - Xhat||_F^2 / (nm).
double avg_reconstruction_error(const DenseMatrix& x, const DenseMatrix& xhat);

// Percent change of sigma_1^2 / sum sigma_i^2 from the host to the block.
double relative_lowrankness_increase(const DenseMatrix& block,
                                     const DenseMatrix& host);

}  // namespace subrank
