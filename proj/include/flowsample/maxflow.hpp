#pragma once

#include <vector>

#include "flowsample/flow_state.hpp"
#include "flowsample/graph.hpp"

namespace flowsample {

enum class AugmentStrategy {
  kBreadthFirst,    // fewest edges
  kShortestLength,  // successive shortest paths (Dijkstra with potentials)
};

/// Integer s-t flow on an undirected graph. Each edge carries a signed net
/// flow, positive in the u->v direction; usage is its magnitude.
class IntegerFlow {
 public:
  /// Throws std::invalid_argument when a flow exceeds capacity or
  /// conservation fails at an inner node.
  IntegerFlow(const PlanarRoadGraph& graph, std::vector<Capacity> net_flow);

  const PlanarRoadGraph& graph() const { return *graph_; }
  Capacity value() const { return value_; }
  Capacity net(EdgeIndex e) const { return net_[e]; }
  Capacity usage(EdgeIndex e) const { return net_[e] < 0 ? -net_[e] : net_[e]; }
  const std::vector<Capacity>& net_flows() const { return net_; }

 private:
  const PlanarRoadGraph* graph_;
  std::vector<Capacity> net_;
  Capacity value_ = 0;
};

/// Ford-Fulkerson with the given augmenting-path search. Opposite flows on
/// an edge cancel, so the result never uses a road in both directions. Among
/// equally short augmenting paths the one with the lexicographically
/// smallest edge-index sequence is taken (for shortest-length, fewer edges
/// wins first). With kShortestLength, pushing against existing flow counts
/// as negative length, so the final flow has the least total length of all
/// max flows.
IntegerFlow max_flow(const PlanarRoadGraph& graph,
                     AugmentStrategy strategy = AugmentStrategy::kBreadthFirst);

/// Splits the flow into value() unit paths, each time taking the fewest-edge
/// path through edges that still carry flow. Leftover cycles are dropped.
FlowState decompose(const IntegerFlow& flow);

}  // namespace flowsample
