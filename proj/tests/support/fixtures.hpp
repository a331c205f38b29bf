#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flowsample/graph.hpp"

namespace fixtures {

struct RandomGraphOptions {
  int nodes = 8;
  double drop_fraction = 0.3;  // share of triangulation edges removed
  flowsample::Capacity max_capacity = 2;
  bool corner_terminals = false;  // s, t at extreme x instead of random nodes
};

/// Jittered points joined greedily by non-crossing segments, then thinned.
/// Deterministic in `seed`; retries internally until the result validates.
flowsample::PlanarRoadGraph random_planar_graph(std::uint64_t seed, const RandomGraphOptions& opt);

flowsample::PlanarRoadGraph make_graph(const std::vector<std::pair<double, double>>& coords,
                                       const std::vector<std::pair<int, int>>& edges,
                                       const std::vector<double>& lengths,
                                       const std::vector<flowsample::Capacity>& caps, int s,
                                       int t);

}  // namespace fixtures
