#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subrank/biclique.hpp"
#include "subrank/pipeline.hpp"
#include "subrank/synth.hpp"

namespace subrank::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kBadInput = 2;
inline constexpr int kNoCandidate = 3;

struct DiscoverArgs {
  std::string input;
  bool header = false;
  std::string output;
  std::optional<std::string> estimate_output;
  std::vector<std::size_t> ranks = {1};
  std::size_t patterns = 1;
  DiscoveryConfig config{};
  bool timing = false;
};

struct PlantArgs {
  std::size_t n = 0, m = 0;
  std::size_t block_rows = 0, block_cols = 0;  // 0 = draw from [20, 75]
  std::string dist = "normal";
  double noise = 1e-5;
  std::size_t patterns = 1;
  std::uint64_t seed = 0;
  std::string output;
  std::string mask_output;
};

struct EvalArgs {
  std::string input;
  bool header = false;
  std::string pred;
  std::string truth;
  std::optional<std::size_t> result_index;
};

struct RowsSubsetArgs {
  std::string input;
  bool header = false;
  double epsilon = 0.0;
  bool columns = false;
  bool normalized = false;
};

int cmd_discover(const DiscoverArgs& args);
int cmd_plant(const PlantArgs& args);
int cmd_eval(const EvalArgs& args);
int cmd_bounds_iterations(double p, double alpha);
int cmd_bounds_rankk(double delta, std::size_t n, std::size_t m,
                     std::size_t k);
int cmd_bounds_chebyshev(double mean, double variance, double delta_init);
int cmd_rows_subset(const RowsSubsetArgs& args);

Distribution parse_distribution(const std::string& name);

}  // namespace subrank::cli
