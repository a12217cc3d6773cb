#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>

#include "io.hpp"
#include "subrank/errors.hpp"
#include "subrank/rng.hpp"
#include "subrank/rows_solver.hpp"

namespace subrank::cli {

namespace {

using nlohmann::json;

json config_json(const DiscoverArgs& args) {
  const DiscoveryConfig& c = args.config;
  const char* strategy =
      c.biclique.kind == BicliqueKind::kExact
          ? "exact"
          : (c.biclique.kind == BicliqueKind::kGreedyPeel ? "greedy"
                                                          : "spectral");
  return json{{"input", args.input},
              {"ranks", args.ranks},
              {"patterns", args.patterns},
              {"n_init", c.n_init},
              {"delta", c.delta},
              {"lambda", c.lambda},
              {"strategy", strategy},
              {"node_budget", c.biclique.exact_node_budget},
              {"dim_limit", c.biclique.exact_dim_limit},
              {"spectral_raw_quadrant", c.biclique.spectral_raw_quadrant},
              {"objective_standardize", c.objective_standardize},
              {"use_svd_factor", c.use_svd_factor},
              {"zero_guard", c.zero_guard},
              {"seed", c.master_seed},
              {"threads", c.threads},
              {"seed_policy",
               json{{"delta_init0", c.seed_policy.delta_init0},
                    {"growth_factor", c.seed_policy.growth_factor},
                    {"growth_period", c.seed_policy.growth_period},
                    {"max_samples", c.seed_policy.max_samples}}}};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

Distribution parse_distribution(const std::string& name) {
  if (name == "normal") return Distribution::kStandardNormal;
  if (name == "uniform") return Distribution::kUniform01;
  if (name == "exponential") return Distribution::kExponential1;
  if (name == "beta") return Distribution::kBeta23;
  if (name == "gamma") return Distribution::kGamma21;
  if (name == "poisson") return Distribution::kPoisson5;
  throw Error("unknown distribution '" + name + "'");
}

int cmd_discover(const DiscoverArgs& args) {
  DenseMatrix d = io::read_matrix_csv(args.input, args.header);
  io::ResultDocument doc;
  doc.config = config_json(args);

  if (args.patterns == 1 && args.ranks.size() == 1) {
    DiscoveryConfig cfg = args.config;
    cfg.k = args.ranks[0];
    auto start = std::chrono::steady_clock::now();
    DiscoveryResult r = discover(d, cfg);
    double ms = elapsed_ms(start);
    io::TimedResult tr;
    tr.result = std::move(r);
    if (args.timing) tr.wall_ms = ms;
    doc.results.push_back(std::move(tr));
    if (args.estimate_output) {
      DenseMatrix est(d.n_rows(), d.n_cols());
      const DiscoveryResult& res = doc.results[0].result;
      DenseMatrix rec = res.rank1_factor ? reconstruct(*res.rank1_factor)
                                         : reconstruct(*res.rankk_factor);
      const IndexSet& rows = res.submatrix.rows;
      const IndexSet& cols = res.submatrix.cols;
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
          est(rows[a], cols[b]) = rec(a, b);
      io::write_matrix_csv(*args.estimate_output, est);
    }
  } else {
    auto start = std::chrono::steady_clock::now();
    MultiDiscovery multi =
        discover_multiple(d, args.ranks, args.patterns, args.config);
    double ms = elapsed_ms(start);
    for (auto& r : multi.results) {
      io::TimedResult tr;
      tr.result = std::move(r);
      doc.results.push_back(std::move(tr));
    }
    // Wall time is attributed to the run, recorded on the first record.
    if (args.timing && !doc.results.empty()) doc.results[0].wall_ms = ms;
    if (args.estimate_output)
      io::write_matrix_csv(*args.estimate_output, multi.estimate);
  }
  io::write_document(args.output, doc);
  return kOk;
}

int cmd_plant(const PlantArgs& args) {
  RngStream rng(args.seed);
  std::vector<PlantSpec> specs(args.patterns);
  for (auto& s : specs) {
    s.n = args.n;
    s.m = args.m;
    // Unspecified block sides are drawn from [20, 75] per pattern.
    s.n_p = args.block_rows ? args.block_rows
                            : 20 + rng.uniform_below(56);
    s.m_p = args.block_cols ? args.block_cols
                            : 20 + rng.uniform_below(56);
    s.distribution = parse_distribution(args.dist);
    s.eps_noise = args.noise;
    s.master_seed = args.seed;
  }
  auto [host, truth] = plant_multiple(specs, rng);
  io::write_matrix_csv(args.output, host);
  if (specs.size() == 1) {
    io::write_mask_csv(args.mask_output, truth.masks[0]);
  } else {
    std::string base = args.mask_output;
    std::string ext;
    std::size_t dot = base.rfind('.');
    if (dot != std::string::npos && dot > base.rfind('/') + 1) {
      ext = base.substr(dot);
      base = base.substr(0, dot);
    }
    for (std::size_t h = 0; h < truth.masks.size(); ++h)
      io::write_mask_csv(base + "_" + std::to_string(h) + ext,
                         truth.masks[h]);
  }
  return kOk;
}

int cmd_eval(const EvalArgs& args) {
  DenseMatrix d = io::read_matrix_csv(args.input, args.header);
  io::ResultDocument doc = io::read_document(args.pred);
  IndicatorMatrix truth = io::read_mask_csv(args.truth);
  if (truth.n_rows() != d.n_rows() || truth.n_cols() != d.n_cols())
    throw Error("truth mask shape does not match the input matrix");
  if (doc.results.empty()) throw Error("prediction document has no results");
  if (args.result_index && *args.result_index >= doc.results.size())
    throw Error("result index out of range");

  std::size_t truth_count = truth.count_ones();
  std::printf("f1,avg_recon_error,lowrankness,relative_increase\n");
  for (std::size_t idx = 0; idx < doc.results.size(); ++idx) {
    if (args.result_index && idx != *args.result_index) continue;
    const DiscoveryResult& r = doc.results[idx].result;
    const IndexSet& rows = r.submatrix.rows;
    const IndexSet& cols = r.submatrix.cols;
    if (!rows.valid_for(d.n_rows()) || !cols.valid_for(d.n_cols()))
      throw Error("prediction indices exceed the input matrix");
    IndicatorMatrix pred(d.n_rows(), d.n_cols());
    for (std::size_t a : rows.indices)
      for (std::size_t b : cols.indices) pred.set(a, b);
    double f1 = f1_score(pred, truth);

    // Zero-padded reconstruction, scored over the true block entries.
    DenseMatrix rec = r.rank1_factor ? reconstruct(*r.rank1_factor)
                                     : reconstruct(*r.rankk_factor);
    DenseMatrix padded(d.n_rows(), d.n_cols());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b)
        padded(rows[a], cols[b]) = rec(a, b);
    double sq_err = 0.0;
    for (std::size_t i = 0; i < d.n_rows(); ++i)
      for (std::size_t j = 0; j < d.n_cols(); ++j)
        if (truth.get(i, j)) {
          double e = d(i, j) - padded(i, j);
          sq_err += e * e;
        }
    double avg_err = truth_count ? sq_err / static_cast<double>(truth_count)
                                 : 0.0;
    double score = low_rankness_score(d.submatrix(rows, cols));
    double rel = relative_lowrankness_increase(d.submatrix(rows, cols), d);
    std::printf("%s,%s,%s,%s\n", io::format_double(f1).c_str(),
                io::format_double(avg_err).c_str(),
                io::format_double(score).c_str(),
                io::format_double(rel).c_str());
  }
  return kOk;
}

int cmd_bounds_iterations(double p, double alpha) {
  std::size_t need = required_iterations(p, alpha);
  double expect = expected_iterations(p);
  std::printf("required_iterations,expected_iterations\n%zu,%s\n", need,
              io::format_double(expect).c_str());
  return kOk;
}

int cmd_bounds_rankk(double delta, std::size_t n, std::size_t m,
                     std::size_t k) {
  auto [max_bound, fro_bound] = rankk_bounds(delta, n, m, k);
  std::printf("max_bound,fro_bound\n%s,%s\n",
              io::format_double(max_bound).c_str(),
              io::format_double(fro_bound).c_str());
  return kOk;
}

int cmd_bounds_chebyshev(double mean, double variance, double delta_init) {
  double raw = chebyshev_det_bound(mean, variance, delta_init);
  double clamped = std::min(1.0, std::max(0.0, raw));
  std::printf("raw,clamped\n%s,%s\n", io::format_double(raw).c_str(),
              io::format_double(clamped).c_str());
  return kOk;
}

int cmd_rows_subset(const RowsSubsetArgs& args) {
  DenseMatrix d = io::read_matrix_csv(args.input, args.header);
  RowThreshold threshold = args.normalized ? RowThreshold::kNormalizedSines
                                           : RowThreshold::kOriginalScale;
  RowSubset subset = args.columns
                         ? largest_col_subset(d, args.epsilon, threshold)
                         : largest_row_subset(d, args.epsilon, threshold);
  std::printf("anchor,count,indices\n%zu,%zu,", subset.anchor,
              subset.rows.size());
  for (std::size_t i = 0; i < subset.rows.size(); ++i)
    std::printf("%s%zu", i ? " " : "", subset.rows[i]);
  std::printf("\n");
  return kOk;
}

}  // namespace subrank::cli
