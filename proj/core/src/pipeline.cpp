#include "subrank/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "subrank/errors.hpp"
#include "subrank/rng.hpp"

namespace subrank {

Rank1Factor interpretable_rank1(const DenseMatrix& x,
                                std::size_t basis_row_position) {
  if (basis_row_position >= x.n_rows())
    throw DimensionMismatchError("interpretable_rank1: basis row out of range");
  auto y = x.row(basis_row_position);
  double yy = dot(y, y);
  if (yy == 0.0)
    throw ZeroAnchorRowError("interpretable_rank1: basis row has zero norm");
  Rank1Factor f;
  f.basis_row.assign(y.begin(), y.end());
  f.basis_row_position = basis_row_position;
  f.coefficients.resize(x.n_rows());
  for (std::size_t i = 0; i < x.n_rows(); ++i)
    f.coefficients[i] = dot(x.row(i), y) / yy;
  f.coefficients[basis_row_position] = 1.0;
  return f;
}

RankKFactor truncated_svd_factor(const DenseMatrix& x, std::size_t k) {
  if (k == 0) throw std::invalid_argument("truncated_svd_factor: k == 0");
  if (k > std::min(x.n_rows(), x.n_cols()))
    throw RankTooLargeError("truncated_svd_factor: k exceeds min dimension");
  SvdResult s = svd(x);
  RankKFactor f;
  f.kind = FactorKind::kTruncatedSvd;
  f.left = DenseMatrix(x.n_rows(), k);
  f.right = DenseMatrix(k, x.n_cols());
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t i = 0; i < x.n_rows(); ++i)
      f.left(i, r) = s.u(i, r) * s.sigma[r];
    for (std::size_t j = 0; j < x.n_cols(); ++j) f.right(r, j) = s.v(j, r);
  }
  return f;
}

DenseMatrix reconstruct(const Rank1Factor& f) {
  DenseMatrix out(f.coefficients.size(), f.basis_row.size());
  for (std::size_t i = 0; i < f.coefficients.size(); ++i)
    for (std::size_t j = 0; j < f.basis_row.size(); ++j)
      out(i, j) = f.coefficients[i] * f.basis_row[j];
  return out;
}

DenseMatrix reconstruct(const RankKFactor& f) {
  return multiply(f.left, f.right);
}

namespace {

struct IterationCandidate {
  DiscoveryResult result;
  double size_term = 0.0;   // block entry count
  double error_term = 0.0;  // ||E||_F^2 / entry count
};

std::vector<double> take(std::span<const double> v, const IndexSet& at) {
  std::vector<double> out;
  out.reserve(at.size());
  for (std::size_t i : at.indices) out.push_back(v[i]);
  return out;
}

// True when some row or column of the seed block lies entirely within the
// zero guard. Such a block is singular by construction (deflation leaves
// regions like this) and carries no evidence of proportional structure.
bool trivial_seed_block(const DenseMatrix& d, const Seed& seed, double guard) {
  for (std::size_t i : seed.row_indices.indices) {
    bool zero = true;
    for (std::size_t j : seed.col_indices.indices)
      if (std::abs(d(i, j)) > guard) {
        zero = false;
        break;
      }
    if (zero) return true;
  }
  for (std::size_t j : seed.col_indices.indices) {
    bool zero = true;
    for (std::size_t i : seed.row_indices.indices)
      if (std::abs(d(i, j)) > guard) {
        zero = false;
        break;
      }
    if (zero) return true;
  }
  return false;
}

// Basis row minimizing the reconstruction error, used when a heuristic
// biclique dropped the anchor row from the block.
std::size_t best_basis_row(const DenseMatrix& x) {
  std::size_t best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < x.n_rows(); ++r) {
    if (dot(x.row(r), x.row(r)) == 0.0) continue;
    Rank1Factor f = interpretable_rank1(x, r);
    DenseMatrix rec = reconstruct(f);
    double err = 0.0;
    for (std::size_t i = 0; i < x.data().size(); ++i) {
      double e = x.data()[i] - rec.data()[i];
      err += e * e;
    }
    if (err < best_err) {
      best_err = err;
      best = r;
    }
  }
  if (best_err == std::numeric_limits<double>::infinity())
    throw ZeroAnchorRowError("best_basis_row: all rows are zero");
  return best;
}

std::optional<IterationCandidate> run_iteration(const DenseMatrix& d,
                                                const DiscoveryConfig& cfg,
                                                std::size_t t) {
  RngStream rng = RngStream::derive(cfg.master_seed, t);
  // Resample past trivial seed blocks on the same stream; bounded attempts
  // so an all-zero input still terminates.
  constexpr int kSeedAttempts = 64;
  Seed seed;
  bool seeded = false;
  for (int attempt = 0; attempt < kSeedAttempts && !seeded; ++attempt) {
    try {
      seed = sample_seed(d, cfg.k, cfg.seed_policy, rng);
    } catch (const ExhaustedError&) {
      return std::nullopt;
    }
    seeded = !trivial_seed_block(d, seed, cfg.zero_guard);
  }
  if (!seeded) return std::nullopt;

  IterationCandidate cand;
  DiscoveryResult& res = cand.result;
  res.seed = seed;
  res.iteration_index = t;

  IndicatorMatrix indicator;
  std::optional<RatioMatrices> ratios;
  std::optional<ProjectionExpansion> row_expansion;
  if (cfg.k == 1) {
    std::size_t pick = rng.uniform_below(4);
    Anchor anchor{seed.row_indices[pick >> 1], seed.col_indices[pick & 1]};
    res.anchor = anchor;
    ratios = ratio_matrices(d, anchor, cfg.zero_guard);
    indicator = intersect(
        row_indicator(ratios->row_ratios, anchor.col_index, cfg.delta),
        col_indicator(ratios->col_ratios, anchor.row_index, cfg.delta));
  } else {
    CombinedIndicator ci =
        combined_indicator(d, seed, cfg.k, cfg.delta, rng);
    indicator = std::move(ci.indicator);
    row_expansion = std::move(ci.row_expansion);
  }

  Biclique bic;
  try {
    bic = solve(indicator, cfg.biclique);
  } catch (const EmptyIndicatorError&) {
    return std::nullopt;
  }
  // A block with at most k rows or columns is rank-k by construction, and
  // one whose entries all sit inside the zero guard is the footprint left
  // by deflation; neither is a pattern, so the iteration yields nothing.
  if (bic.rows.size() <= cfg.k || bic.cols.size() <= cfg.k)
    return std::nullopt;
  res.submatrix = Submatrix{bic.rows, bic.cols};
  res.biclique_exact = bic.exact;

  DenseMatrix x = d.submatrix(bic.rows, bic.cols);
  if (max_norm(x) <= cfg.zero_guard) return std::nullopt;
  DenseMatrix rec;
  if (cfg.k == 1 && !cfg.use_svd_factor) {
    // Deflated inputs can present an exactly-zero basis row; such an
    // iteration yields no candidate, like an empty biclique.
    try {
      std::size_t pos;
      auto it = std::find(bic.rows.indices.begin(), bic.rows.indices.end(),
                          res.anchor->row_index);
      if (it != bic.rows.indices.end())
        pos = static_cast<std::size_t>(it - bic.rows.indices.begin());
      else
        pos = best_basis_row(x);
      res.rank1_factor = interpretable_rank1(x, pos);
    } catch (const ZeroAnchorRowError&) {
      return std::nullopt;
    }
    rec = reconstruct(*res.rank1_factor);
  } else if (cfg.use_svd_factor) {
    std::size_t k = std::min({cfg.k, x.n_rows(), x.n_cols()});
    res.rankk_factor = truncated_svd_factor(x, k);
    rec = reconstruct(*res.rankk_factor);
  } else {
    // Projection factor: coefficients against actual anchor rows of d.
    RankKFactor f;
    f.kind = FactorKind::kInterpretable;
    const IndexSet& anchors = row_expansion->anchor_rows;
    f.left = DenseMatrix(bic.rows.size(), anchors.size());
    for (std::size_t i = 0; i < bic.rows.size(); ++i)
      for (std::size_t r = 0; r < anchors.size(); ++r)
        f.left(i, r) = row_expansion->coeffs(bic.rows[i], r);
    f.right = d.submatrix(anchors, bic.cols);
    res.rankk_factor = std::move(f);
    rec = reconstruct(*res.rankk_factor);
  }

  DenseMatrix err(x.n_rows(), x.n_cols());
  for (std::size_t i = 0; i < x.data().size(); ++i)
    err.data()[i] = x.data()[i] - rec.data()[i];
  res.error_max = max_norm(err);
  res.error_fro = frobenius_norm(err);
  res.error_spec = singular_values(err).values[0];

  if (cfg.k == 1) {
    std::vector<double> row_sel = take(ratios->guarded_anchor_row, bic.cols);
    std::vector<double> col_sel = take(ratios->guarded_anchor_col, bic.rows);
    res.bounds = rank1_bounds(cfg.delta, row_sel, col_sel, bic.rows.size(),
                              bic.cols.size());
    res.bounds_full_anchor =
        rank1_bounds(cfg.delta, ratios->guarded_anchor_row,
                     ratios->guarded_anchor_col, bic.rows.size(),
                     bic.cols.size());
    res.second_sv_bound = svd_spectral_bound(x, cfg.delta, row_sel, col_sel);
  } else if (bic.rows.size() > cfg.k && bic.cols.size() > cfg.k) {
    res.bounds_rank_k =
        rankk_bounds(cfg.delta, bic.rows.size(), bic.cols.size(), cfg.k);
  }

  double size = static_cast<double>(x.size());
  cand.size_term = size;
  cand.error_term = res.error_fro * res.error_fro / size;
  res.objective = size - cfg.lambda * cand.error_term;
  return cand;
}

// Population z-scores; a constant sample maps to all zeros.
void standardize(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  double sd = std::sqrt(var);
  for (double& x : v) x = sd > 0.0 ? (x - mean) / sd : 0.0;
}

}  // namespace

DiscoveryResult discover(const DenseMatrix& d, const DiscoveryConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("discover: k must be >= 1");
  if (cfg.n_init < 1)
    throw std::invalid_argument("discover: n_init must be >= 1");
  if (d.n_rows() < cfg.k + 1 || d.n_cols() < cfg.k + 1)
    throw RankTooLargeError("discover: matrix smaller than (k+1) block");

  std::vector<std::optional<IterationCandidate>> slots(cfg.n_init);
  std::size_t workers = std::max<std::size_t>(1, cfg.threads);
  workers = std::min(workers, cfg.n_init);
  if (workers == 1) {
    for (std::size_t t = 0; t < cfg.n_init; ++t)
      slots[t] = run_iteration(d, cfg, t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t t = next.fetch_add(1);
          if (t >= cfg.n_init) return;
          slots[t] = run_iteration(d, cfg, t);
        }
      });
    for (auto& th : pool) th.join();
  }

  std::vector<std::size_t> live;
  for (std::size_t t = 0; t < cfg.n_init; ++t)
    if (slots[t]) live.push_back(t);
  if (live.empty())
    throw NoCandidateError("discover: no iteration produced a submatrix");

  // Candidate scores: standardized when requested and at least two exist.
  std::vector<double> scores(live.size());
  if (cfg.objective_standardize && live.size() >= 2) {
    std::vector<double> sizes(live.size()), errors(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) {
      sizes[i] = slots[live[i]]->size_term;
      errors[i] = slots[live[i]]->error_term;
    }
    standardize(sizes);
    standardize(errors);
    for (std::size_t i = 0; i < live.size(); ++i)
      scores[i] = sizes[i] - cfg.lambda * errors[i];
  } else {
    for (std::size_t i = 0; i < live.size(); ++i)
      scores[i] = slots[live[i]]->result.objective;
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < live.size(); ++i) {
    const auto& a = slots[live[i]]->result;
    const auto& b = slots[live[best]]->result;
    if (scores[i] > scores[best] ||
        (scores[i] == scores[best] &&
         (a.submatrix.entry_count() > b.submatrix.entry_count() ||
          (a.submatrix.entry_count() == b.submatrix.entry_count() &&
           a.error_fro < b.error_fro))))
      best = i;
  }
  return slots[live[best]]->result;
}

MultiDiscovery discover_multiple(const DenseMatrix& d,
                                 const std::vector<std::size_t>& ranks,
                                 std::size_t n_patterns,
                                 const DiscoveryConfig& config) {
  if (ranks.empty())
    throw std::invalid_argument("discover_multiple: no ranks given");
  MultiDiscovery out;
  out.estimate = DenseMatrix(d.n_rows(), d.n_cols());
  DenseMatrix working = d;
  for (std::size_t h = 0; h < n_patterns; ++h) {
    std::optional<DiscoveryResult> best;
    for (std::size_t ri = 0; ri < ranks.size(); ++ri) {
      DiscoveryConfig sub = config;
      sub.k = ranks[ri];
      sub.master_seed = derive_seed(config.master_seed, h, ri);
      // One rank can come up empty on the deflated input while another
      // succeeds; the pattern fails only when every rank does.
      try {
        DiscoveryResult r = discover(working, sub);
        if (!best || r.objective > best->objective) best = std::move(r);
      } catch (const NoCandidateError&) {
      }
    }
    if (!best)
      throw NoCandidateError("discover_multiple: pattern " +
                             std::to_string(h) +
                             " produced no candidate at any rank");
    DenseMatrix rec = best->rank1_factor
                          ? reconstruct(*best->rank1_factor)
                          : reconstruct(*best->rankk_factor);
    const IndexSet& rows = best->submatrix.rows;
    const IndexSet& cols = best->submatrix.cols;
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) {
        out.estimate(rows[a], cols[b]) += rec(a, b);
        working(rows[a], cols[b]) -= rec(a, b);
      }
    out.results.push_back(std::move(*best));
  }
  return out;
}

}  // namespace subrank
