#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "subrank/errors.hpp"

namespace {

using namespace subrank;
using namespace subrank::cli;

// --seed wins; otherwise the SUBRANK_SEED environment variable; otherwise 0.
std::uint64_t default_seed() {
  const char* env = std::getenv("SUBRANK_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw Error("SUBRANK_SEED is not an unsigned integer");
  return v;
}

void add_strategy_option(CLI::App* cmd, std::string& strategy) {
  cmd->add_option("--strategy", strategy,
                  "Biclique strategy: exact, greedy, or spectral")
      ->check(CLI::IsMember({"exact", "greedy", "spectral"}));
}

BicliqueKind parse_strategy(const std::string& s) {
  if (s == "greedy") return BicliqueKind::kGreedyPeel;
  if (s == "spectral") return BicliqueKind::kSpectral;
  return BicliqueKind::kExact;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discovery of near-low-rank submatrices with error guarantees"};
  app.require_subcommand(1);

  DiscoverArgs discover_args;
  std::string discover_strategy = "exact";
  bool discover_no_standardize = false;
  bool seed_given = false;
  std::string estimate_path;
  auto* disc = app.add_subcommand(
      "discover", "Find near-low-rank submatrices in a CSV matrix");
  disc->add_option("--input", discover_args.input, "Input matrix CSV")
      ->required();
  disc->add_flag("--header", discover_args.header,
                 "Skip the first line of the input");
  disc->add_option("--output", discover_args.output, "Result JSON path")
      ->required();
  disc->add_option("--estimate-output", estimate_path,
                   "Also write the zero-padded estimate matrix CSV");
  disc->add_option("--rank", discover_args.ranks,
                   "Target rank(s); repeat or list to try several")
      ->delimiter(',');
  disc->add_option("--patterns", discover_args.patterns,
                   "Number of submatrices to extract");
  disc->add_option("--iters", discover_args.config.n_init,
                   "Independent initializations per pattern");
  disc->add_option("--delta", discover_args.config.delta,
                   "Expansion tolerance");
  disc->add_option("--lambda", discover_args.config.lambda,
                   "Weight of the error term in the objective");
  add_strategy_option(disc, discover_strategy);
  disc->add_option("--node-budget",
                   discover_args.config.biclique.exact_node_budget,
                   "Exact search node budget");
  disc->add_option("--dim-limit",
                   discover_args.config.biclique.exact_dim_limit,
                   "Exact search cap on the enumerated dimension");
  disc->add_flag("--spectral-raw",
                 discover_args.config.biclique.spectral_raw_quadrant,
                 "Return the raw spectral quadrant (no error guarantees)");
  disc->add_flag("--no-standardize", discover_no_standardize,
                 "Rank candidates by the unstandardized objective");
  disc->add_flag("--svd-factor", discover_args.config.use_svd_factor,
                 "Report a truncated-SVD factor");
  disc->add_option("--seed", discover_args.config.master_seed, "Master seed")
      ->trigger_on_parse()
      ->each([&](const std::string&) { seed_given = true; });
  disc->add_option("--threads", discover_args.config.threads, "Worker threads");
  disc->add_option("--zero-guard", discover_args.config.zero_guard,
                   "Smallest allowed ratio divisor magnitude");
  disc->add_option("--delta-init", discover_args.config.seed_policy.delta_init0,
                   "Initial seed determinant tolerance");
  disc->add_option("--growth-factor",
                   discover_args.config.seed_policy.growth_factor,
                   "Seed tolerance growth factor");
  disc->add_option("--growth-period",
                   discover_args.config.seed_policy.growth_period,
                   "Failed draws between tolerance growths");
  disc->add_option("--max-samples",
                   discover_args.config.seed_policy.max_samples,
                   "Seed draw budget per initialization");
  disc->add_flag("--timing", discover_args.timing,
                 "Record wall time in the result document");

  PlantArgs plant_args;
  bool plant_seed_given = false;
  auto* plant = app.add_subcommand(
      "plant", "Generate a host matrix with planted near-rank-1 blocks");
  plant->add_option("--rows", plant_args.n, "Host rows")->required();
  plant->add_option("--cols", plant_args.m, "Host columns")->required();
  plant->add_option("--block-rows", plant_args.block_rows,
                    "Planted block rows (0 = draw from [20, 75])");
  plant->add_option("--block-cols", plant_args.block_cols,
                    "Planted block columns (0 = draw from [20, 75])");
  plant->add_option("--dist", plant_args.dist,
                    "Entry distribution: normal, uniform, exponential, beta, "
                    "gamma, poisson")
      ->check(CLI::IsMember(
          {"normal", "uniform", "exponential", "beta", "gamma", "poisson"}));
  plant->add_option("--noise", plant_args.noise, "Noise scale");
  plant->add_option("--patterns", plant_args.patterns, "Number of blocks");
  plant->add_option("--seed", plant_args.seed, "Master seed")
      ->trigger_on_parse()
      ->each([&](const std::string&) { plant_seed_given = true; });
  plant->add_option("--output", plant_args.output, "Host matrix CSV path")
      ->required();
  plant->add_option("--mask-output", plant_args.mask_output,
                    "Ground-truth mask CSV path")
      ->required();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand(
      "eval", "Score a prediction document against a ground-truth mask");
  eval->add_option("--input", eval_args.input, "Input matrix CSV")->required();
  eval->add_flag("--header", eval_args.header,
                 "Skip the first line of the input");
  eval->add_option("--pred", eval_args.pred, "Prediction JSON")->required();
  eval->add_option("--truth", eval_args.truth, "Ground-truth mask CSV")
      ->required();
  std::size_t eval_index = 0;
  auto* eval_index_opt =
      eval->add_option("--result-index", eval_index, "Score one result only");

  auto* bounds = app.add_subcommand("bounds", "Print closed-form guarantees");
  bounds->require_subcommand(1);
  double b_p = 0.0, b_alpha = 0.0;
  auto* b_iter = bounds->add_subcommand(
      "iterations", "Iterations needed to hit a target with confidence alpha");
  b_iter->add_option("--p", b_p, "Per-iteration success probability")
      ->required();
  b_iter->add_option("--alpha", b_alpha, "Desired success probability")
      ->required();
  double b_delta = 0.0;
  std::size_t b_n = 0, b_m = 0, b_k = 0;
  auto* b_rankk =
      bounds->add_subcommand("rankk", "Error bounds for a rank-k expansion");
  b_rankk->add_option("--delta", b_delta, "Expansion tolerance")->required();
  b_rankk->add_option("--n", b_n, "Block rows")->required();
  b_rankk->add_option("--m", b_m, "Block columns")->required();
  b_rankk->add_option("--k", b_k, "Rank")->required();
  double b_mean = 0.0, b_var = 0.0, b_dinit = 0.0;
  auto* b_cheb = bounds->add_subcommand(
      "chebyshev", "Tail bound on a 2x2 determinant of i.i.d. entries");
  b_cheb->add_option("--mean", b_mean, "Entry mean")->required();
  b_cheb->add_option("--variance", b_var, "Entry variance")->required();
  b_cheb->add_option("--delta-init", b_dinit, "Determinant tolerance")
      ->required();

  RowsSubsetArgs rows_args;
  auto* rows = app.add_subcommand(
      "rows_subset", "Largest set of rows within epsilon of a common anchor");
  rows->add_option("--input", rows_args.input, "Input matrix CSV")->required();
  rows->add_flag("--header", rows_args.header,
                 "Skip the first line of the input");
  rows->add_option("--epsilon", rows_args.epsilon, "Residual tolerance")
      ->required();
  rows->add_flag("--cols", rows_args.columns, "Operate on columns instead");
  rows->add_flag("--normalized", rows_args.normalized,
                 "Compare sines directly instead of scaled residuals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*disc) {
      discover_args.config.biclique.kind = parse_strategy(discover_strategy);
      discover_args.config.objective_standardize = !discover_no_standardize;
      if (!seed_given) discover_args.config.master_seed = default_seed();
      if (!estimate_path.empty()) discover_args.estimate_output = estimate_path;
      return cmd_discover(discover_args);
    }
    if (*plant) {
      if (!plant_seed_given) plant_args.seed = default_seed();
      return cmd_plant(plant_args);
    }
    if (*eval) {
      if (*eval_index_opt) eval_args.result_index = eval_index;
      return cmd_eval(eval_args);
    }
    if (*b_iter) return cmd_bounds_iterations(b_p, b_alpha);
    if (*b_rankk) return cmd_bounds_rankk(b_delta, b_n, b_m, b_k);
    if (*b_cheb) return cmd_bounds_chebyshev(b_mean, b_var, b_dinit);
    if (*rows) return cmd_rows_subset(rows_args);
  } catch (const NoCandidateError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNoCandidate;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  }
  return kBadInput;
}
