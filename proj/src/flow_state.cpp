#include "flowsample/flow_state.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowsample {

double path_length(const PlanarRoadGraph& graph, const std::vector<EdgeIndex>& edges) {
  double total = 0.0;
  for (EdgeIndex e : edges) total += graph.edge(e).length;
  return total;
}

UnitPath make_path(const PlanarRoadGraph& graph, std::vector<NodeIndex> nodes) {
  UnitPath p;
  p.edges.reserve(nodes.size());
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto e = graph.edge_between(nodes[i], nodes[i + 1]);
    if (!e) {
      throw std::invalid_argument("nodes '" + graph.node(nodes[i]).id + "' and '" +
                                  graph.node(nodes[i + 1]).id + "' are not adjacent");
    }
    p.edges.push_back(*e);
  }
  p.nodes = std::move(nodes);
  p.length = path_length(graph, p.edges);
  return p;
}

FlowState::FlowState(const PlanarRoadGraph& graph, std::vector<UnitPath> paths)
    : graph_(&graph), paths_(std::move(paths)), usage_(graph.edge_count(), 0) {
  for (const UnitPath& p : paths_) {
    for (EdgeIndex e : p.edges) ++usage_[e];
  }
  total_length_ = recompute_total();
}

double FlowState::recompute_total() const {
  double total = 0.0;
  for (const UnitPath& p : paths_) total += p.length;
  return total;
}

void FlowState::replace_path(std::size_t i, UnitPath replacement) {
  for (EdgeIndex e : paths_[i].edges) --usage_[e];
  for (EdgeIndex e : replacement.edges) ++usage_[e];
  paths_[i] = std::move(replacement);
  total_length_ = recompute_total();
}

std::size_t FlowState::multiplicity(const UnitPath& p) const {
  return static_cast<std::size_t>(std::count(paths_.begin(), paths_.end(), p));
}

std::vector<EdgeIndex> FlowState::used_real_edges() const {
  std::vector<EdgeIndex> out;
  for (const UnitPath& p : paths_) {
    for (EdgeIndex e : p.edges) {
      if (!graph_->edge(e).is_virtual) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::string> FlowState::find_violation(std::size_t expected_paths) const {
  const PlanarRoadGraph& g = *graph_;
  if (paths_.size() != expected_paths) {
    return "state has " + std::to_string(paths_.size()) + " paths, expected " +
           std::to_string(expected_paths);
  }
  std::vector<Capacity> recount(g.edge_count(), 0);
  std::vector<char> seen(g.node_count(), 0);
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    const UnitPath& p = paths_[i];
    const std::string tag = "path " + std::to_string(i);
    if (p.nodes.size() < 2 || p.edges.size() + 1 != p.nodes.size()) return tag + " is malformed";
    if (p.nodes.front() != g.source() || p.nodes.back() != g.sink()) {
      return tag + " does not run from source to sink";
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (NodeIndex n : p.nodes) {
      if (seen[n]) return tag + " revisits node '" + g.node(n).id + "'";
      seen[n] = 1;
    }
    for (std::size_t j = 0; j < p.edges.size(); ++j) {
      const EdgeRecord& e = g.edge(p.edges[j]);
      const bool joins = (e.u == p.nodes[j] && e.v == p.nodes[j + 1]) ||
                         (e.v == p.nodes[j] && e.u == p.nodes[j + 1]);
      if (!joins) return tag + " uses edge '" + e.id + "' out of place";
      ++recount[p.edges[j]];
    }
    if (p.length != path_length(g, p.edges)) return tag + " has a stale length";
  }
  for (std::size_t e = 0; e < recount.size(); ++e) {
    if (recount[e] != usage_[e]) return "usage cache of edge '" + g.edge(e).id + "' is stale";
    if (recount[e] > g.edge(e).capacity) {
      return "edge '" + g.edge(e).id + "' carries " + std::to_string(recount[e]) +
             " units over capacity " + std::to_string(g.edge(e).capacity);
    }
  }
  if (total_length_ != recompute_total()) return "total length cache is stale";
  return std::nullopt;
}

bool FlowState::same_paths(const FlowState& other) const {
  if (paths_.size() != other.paths_.size()) return false;
  auto sorted = [](const std::vector<UnitPath>& ps) {
    std::vector<const std::vector<NodeIndex>*> out;
    for (const UnitPath& p : ps) out.push_back(&p.nodes);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return *a < *b; });
    return out;
  };
  const auto a = sorted(paths_);
  const auto b = sorted(other.paths_);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (*a[i] != *b[i]) return false;
  }
  return true;
}

}  // namespace flowsample
