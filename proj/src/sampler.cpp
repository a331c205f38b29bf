#include "flowsample/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flowsample {
namespace {

std::size_t sorted_intersection_size(const std::vector<EdgeIndex>& a,
                                     const std::vector<EdgeIndex>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

}  // namespace

void SamplerConfig::validate() const {
  ChainParams{lambda, seed}.validate();
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (sf < 1) throw std::invalid_argument("sampling frequency sf must be at least 1");
  if (exit == ExitMode::kTargetCount && target_solutions == 0) {
    throw std::invalid_argument("target-count exit needs a positive target");
  }
  if (exit == ExitMode::kTargetCount && max_total_iter == 0) {
    throw std::invalid_argument("max_total_iter must be positive");
  }
}

std::vector<FlowState> SolutionSet::states() const {
  std::vector<FlowState> out;
  out.reserve(members.size());
  for (const SolutionRecord& m : members) out.push_back(m.state);
  return out;
}

std::size_t common_edges(const FlowState& x, const FlowState& y) {
  if (&x.graph() != &y.graph()) {
    throw std::invalid_argument("states belong to different graphs");
  }
  return sorted_intersection_size(x.used_real_edges(), y.used_real_edges());
}

bool is_koptimal(const FlowState& candidate, const SolutionSet& set, std::int64_t k) {
  for (const SolutionRecord& m : set.members) {
    if (static_cast<std::int64_t>(common_edges(candidate, m.state)) > k) return false;
  }
  return true;
}

SolutionSet sample_koptimal(const PlanarRoadGraph& graph, const SamplerConfig& config) {
  config.validate();
  FlowState x = decompose(max_flow(graph, config.initial_strategy));
  MarkovChain chain(graph, ChainParams{config.lambda, config.seed});

  SolutionSet set;
  // Edge sets of the kept solutions, for the k-optimality test.
  std::vector<std::vector<EdgeIndex>> kept_edges;

  auto consider = [&](std::uint64_t iter) {
    std::vector<EdgeIndex> edges = x.used_real_edges();
    for (std::size_t m = 0; m < set.members.size(); ++m) {
      const std::size_t shared = sorted_intersection_size(edges, kept_edges[m]);
      if (static_cast<std::int64_t>(shared) > config.k) return;
      if (shared == edges.size() && shared == kept_edges[m].size() &&
          set.members[m].state.edge_usage() == x.edge_usage()) {
        return;  // duplicate
      }
    }
    set.members.push_back({x, iter, config.seed});
    kept_edges.push_back(std::move(edges));
  };

  const bool fixed = config.exit == ExitMode::kFixedIterations;
  const std::uint64_t last = fixed ? config.mix_iter + config.num_iter : config.max_total_iter;
  std::uint64_t iter = 1;
  for (; iter <= last; ++iter) {
    if (iter > config.mix_iter && iter % config.sf == 0) {
      consider(iter);
      if (!fixed && set.members.size() >= config.target_solutions) break;
    }
    chain.advance(x);
  }
  set.iterations_run = std::min(iter, last);

  if (!fixed && set.members.size() < config.target_solutions) {
    set.target_reached = false;
    set.warnings.push_back("iteration budget of " + std::to_string(config.max_total_iter) +
                           " exhausted with " + std::to_string(set.members.size()) + " of " +
                           std::to_string(config.target_solutions) + " solutions");
  }
  if (set.members.empty()) {
    set.warnings.push_back("no state passed the k-optimality filter");
  }
  return set;
}

}  // namespace flowsample
