#pragma once

#include <cstddef>
#include <cstdint>

#include "subrank/matrix.hpp"
#include "subrank/rng.hpp"

namespace subrank {

// Schedule for the near-singularity tolerance used while drawing seed blocks.
// The tolerance starts tiny and is multiplied by growth_factor after every
// growth_period consecutive failures, so adversarial inputs cannot stall the
// sampler; max_samples caps the total number of draws.
struct SeedPolicy {
  double delta_init0 = 1e-11;
  double growth_factor = 10.0;
  std::size_t growth_period = 10000;
  std::size_t max_samples = 10000000;

  bool operator==(const SeedPolicy&) const = default;
};

// A (k+1) x (k+1) index block whose determinant passed the tolerance test.
struct Seed {
  IndexSet row_indices;
  IndexSet col_indices;
  double det_value = 0.0;
  std::size_t samples_consumed = 0;  // draws including the successful one
  double final_delta_init = 0.0;     // active tolerance at acceptance

  bool operator==(const Seed&) const = default;
};

double det_2x2(double a, double b, double c, double d);

// Draws (k+1) entry positions with pairwise distinct rows and columns, forms
// the block at the sorted index products, and accepts once |det| is within
// the active tolerance.  Throws ExhaustedError at max_samples.
Seed sample_seed(const DenseMatrix& d, std::size_t k, const SeedPolicy& policy,
                 RngStream& rng);

}  // namespace subrank
