#include "subrank/synth.hpp"

#include <algorithm>
#include <cmath>

#include "subrank/errors.hpp"

namespace subrank {

double draw(Distribution dist, RngStream& rng) {
  switch (dist) {
    case Distribution::kStandardNormal:
      return rng.normal();
    case Distribution::kUniform01:
      return rng.uniform01();
    case Distribution::kExponential1:
      return rng.exponential(1.0);
    case Distribution::kBeta23:
      return rng.beta(2.0, 3.0);
    case Distribution::kGamma21:
      return rng.gamma(2.0, 1.0);
    case Distribution::kPoisson5:
      return static_cast<double>(rng.poisson(5.0));
  }
  throw Error("draw: unknown distribution");
}

double distribution_mean(Distribution dist) {
  switch (dist) {
    case Distribution::kStandardNormal:
      return 0.0;
    case Distribution::kUniform01:
      return 0.5;
    case Distribution::kExponential1:
      return 1.0;
    case Distribution::kBeta23:
      return 2.0 / 5.0;
    case Distribution::kGamma21:
      return 2.0;
    case Distribution::kPoisson5:
      return 5.0;
  }
  throw Error("distribution_mean: unknown distribution");
}

namespace {

void check_spec(const PlantSpec& s) {
  if (s.n_p == 0 || s.m_p == 0 || s.n_p > s.n || s.m_p > s.m)
    throw DegenerateDimsError("plant: block does not fit in host");
}

// Noisy rank-1 block: outer product plus eps_noise * (noise - mean(dist)).
DenseMatrix make_block(const PlantSpec& spec, RngStream& rng) {
  std::vector<double> x(spec.n_p), y(spec.m_p);
  for (double& v : x) v = draw(spec.distribution, rng);
  for (double& v : y) v = draw(spec.distribution, rng);
  DenseMatrix block(spec.n_p, spec.m_p);
  double mean = distribution_mean(spec.distribution);
  for (std::size_t i = 0; i < spec.n_p; ++i)
    for (std::size_t j = 0; j < spec.m_p; ++j)
      block(i, j) =
          x[i] * y[j] + spec.eps_noise * (draw(spec.distribution, rng) - mean);
  return block;
}

IndexSet sample_positions(std::size_t dim, std::size_t count, RngStream& rng) {
  std::vector<std::size_t> picks;
  rng.sample_distinct(dim, count, std::back_inserter(picks));
  std::sort(picks.begin(), picks.end());
  return IndexSet(picks);
}

}  // namespace

std::pair<DenseMatrix, GroundTruth> plant_multiple(
    const std::vector<PlantSpec>& specs, RngStream& rng) {
  if (specs.empty()) throw DegenerateDimsError("plant_multiple: no specs");
  const std::size_t n = specs[0].n, m = specs[0].m;
  for (const auto& s : specs) {
    check_spec(s);
    if (s.n != n || s.m != m)
      throw DimensionMismatchError("plant_multiple: host shapes differ");
  }
  std::vector<DenseMatrix> blocks;
  blocks.reserve(specs.size());
  std::vector<double> pool;
  for (const auto& s : specs) {
    blocks.push_back(make_block(s, rng));
    const auto& d = blocks.back().data();
    pool.insert(pool.end(), d.begin(), d.end());
  }
  DenseMatrix host(n, m);
  for (double& v : host.data())
    v = pool[rng.uniform_below(pool.size())];

  GroundTruth truth;
  // Block regions replace the background; overlapping blocks add.
  std::vector<IndexSet> rows_of(specs.size()), cols_of(specs.size());
  for (std::size_t h = 0; h < specs.size(); ++h) {
    rows_of[h] = sample_positions(n, specs[h].n_p, rng);
    cols_of[h] = sample_positions(m, specs[h].m_p, rng);
    IndicatorMatrix mask(n, m);
    for (std::size_t a = 0; a < rows_of[h].size(); ++a)
      for (std::size_t b = 0; b < cols_of[h].size(); ++b)
        mask.set(rows_of[h][a], cols_of[h][b]);
    truth.masks.push_back(std::move(mask));
  }
  for (std::size_t h = 0; h < specs.size(); ++h)
    for (std::size_t a = 0; a < rows_of[h].size(); ++a)
      for (std::size_t b = 0; b < cols_of[h].size(); ++b) {
        bool covered_before = false;
        for (std::size_t g = 0; g < h && !covered_before; ++g)
          covered_before = truth.masks[g].get(rows_of[h][a], cols_of[h][b]);
        double v = blocks[h](a, b);
        double& cell = host(rows_of[h][a], cols_of[h][b]);
        cell = covered_before ? cell + v : v;
      }
  return {std::move(host), std::move(truth)};
}

std::pair<DenseMatrix, GroundTruth> plant_single(const PlantSpec& spec,
                                                 RngStream& rng) {
  return plant_multiple({spec}, rng);
}

double f1_score(const IndicatorMatrix& predicted,
                const IndicatorMatrix& truth) {
  if (predicted.n_rows() != truth.n_rows() ||
      predicted.n_cols() != truth.n_cols())
    throw DimensionMismatchError("f1_score: mask shapes differ");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.n_rows(); ++i)
    for (std::size_t j = 0; j < truth.n_cols(); ++j) {
      bool p = predicted.get(i, j), t = truth.get(i, j);
      if (p && t) ++tp;
      else if (p) ++fp;
      else if (t) ++fn;
    }
  std::size_t denom = 2 * tp + fp + fn;
  if (denom == 0) return 1.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

double avg_reconstruction_error(const DenseMatrix& x, const DenseMatrix& xhat) {
  if (x.n_rows() != xhat.n_rows() || x.n_cols() != xhat.n_cols())
    throw DimensionMismatchError("avg_reconstruction_error: shapes differ");
  if (x.size() == 0)
    throw DimensionMismatchError("avg_reconstruction_error: empty matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < x.data().size(); ++i) {
    double e = x.data()[i] - xhat.data()[i];
    s += e * e;
  }
  return s / static_cast<double>(x.size());
}

double relative_lowrankness_increase(const DenseMatrix& block,
                                     const DenseMatrix& host) {
  double lb = low_rankness_score(block);
  double lh = low_rankness_score(host);
  return (lb - lh) / lh * 100.0;
}

}  // namespace subrank
