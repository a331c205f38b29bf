#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowsample/graph.hpp"

namespace flowsample {

/// Simple s-t path carrying one unit of flow.
struct UnitPath {
  std::vector<NodeIndex> nodes;
  std::vector<EdgeIndex> edges;
  double length = 0.0;

  bool operator==(const UnitPath& other) const { return nodes == other.nodes; }
};

/// Builds a path from its node sequence; throws std::invalid_argument when two
/// consecutive nodes are not adjacent.
UnitPath make_path(const PlanarRoadGraph& graph, std::vector<NodeIndex> nodes);

/// Sum of edge lengths in path order. All cached lengths use this order so a
/// recomputation reproduces them bit for bit.
double path_length(const PlanarRoadGraph& graph, const std::vector<EdgeIndex>& edges);

/// Integer max flow held as an ordered multiset of mf unit paths, with the
/// per-edge usage and total length |x| cached.
class FlowState {
 public:
  FlowState(const PlanarRoadGraph& graph, std::vector<UnitPath> paths);

  const PlanarRoadGraph& graph() const { return *graph_; }
  const std::vector<UnitPath>& paths() const { return paths_; }
  const UnitPath& path(std::size_t i) const { return paths_[i]; }
  std::size_t path_count() const { return paths_.size(); }
  const std::vector<Capacity>& edge_usage() const { return usage_; }
  Capacity usage(EdgeIndex e) const { return usage_[e]; }
  double total_length() const { return total_length_; }

  /// Swaps path i for `replacement`, keeping usage and length coherent.
  void replace_path(std::size_t i, UnitPath replacement);

  /// Copies of `p` in the multiset.
  std::size_t multiplicity(const UnitPath& p) const;

  /// Sorted ids of non-virtual edges with nonzero usage.
  std::vector<EdgeIndex> used_real_edges() const;

  /// Full invariant check against `expected_paths` paths: endpoints,
  /// simplicity, adjacency, capacity and cache coherence. Returns a
  /// description of the first violation.
  std::optional<std::string> find_violation(std::size_t expected_paths) const;

  /// Same multiset of paths.
  bool same_paths(const FlowState& other) const;

 private:
  double recompute_total() const;

  const PlanarRoadGraph* graph_;
  std::vector<UnitPath> paths_;
  std::vector<Capacity> usage_;
  double total_length_ = 0.0;
};

}  // namespace flowsample
