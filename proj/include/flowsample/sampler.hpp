#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowsample/chain.hpp"
#include "flowsample/flow_state.hpp"
#include "flowsample/maxflow.hpp"

namespace flowsample {

enum class ExitMode {
  kFixedIterations,  // run mix_iter + num_iter iterations
  kTargetCount,      // stop once target_solutions are collected
};

struct SamplerConfig {
  double lambda = 0.95;
  std::int64_t k = 0;
  std::uint64_t mix_iter = 0;
  std::uint64_t num_iter = 50000;
  std::uint64_t sf = 25;
  ExitMode exit = ExitMode::kFixedIterations;
  std::size_t target_solutions = 0;
  /// Hard ceiling on iterations in target-count mode.
  std::uint64_t max_total_iter = 10'000'000;
  std::uint64_t seed = 0;
  AugmentStrategy initial_strategy = AugmentStrategy::kBreadthFirst;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct SolutionRecord {
  FlowState state;
  std::uint64_t iteration = 0;
  std::uint64_t seed = 0;
};

struct SolutionSet {
  std::vector<SolutionRecord> members;
  std::uint64_t iterations_run = 0;
  bool target_reached = true;
  std::vector<std::string> warnings;

  std::size_t size() const { return members.size(); }
  std::vector<FlowState> states() const;
};

/// Number of non-virtual edges used by both states. Throws
/// std::invalid_argument when the states live on different graphs.
std::size_t common_edges(const FlowState& x, const FlowState& y);

bool is_koptimal(const FlowState& candidate, const SolutionSet& set, std::int64_t k);

/// MaxFlow-MCMC: start from a Ford-Fulkerson flow, run the chain, and after
/// mix_iter iterations test the current state every sf iterations, keeping it
/// when it shares at most k edges with every kept solution and is not a
/// duplicate of one.
SolutionSet sample_koptimal(const PlanarRoadGraph& graph, const SamplerConfig& config);

}  // namespace flowsample
