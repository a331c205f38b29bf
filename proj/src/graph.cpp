#include "flowsample/graph.hpp"

#include <cstdio>

#include <cmath>
#include <numeric>
#include <queue>

namespace flowsample {

PlanarRoadGraph::PlanarRoadGraph(std::vector<NodeRecord> nodes, std::vector<EdgeRecord> edges,
                                 NodeIndex source, NodeIndex sink)
    : PlanarRoadGraph(NoValidate{}, std::move(nodes), std::move(edges), source, sink) {
  check_planar_embedding(nodes_, edges_);
  check_terminals_connected();
  faces_ = compute_faces(nodes_, edges_);
}

PlanarRoadGraph::PlanarRoadGraph(NoValidate, std::vector<NodeRecord> nodes,
                                 std::vector<EdgeRecord> edges, NodeIndex source, NodeIndex sink)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), source_(source), sink_(sink) {
  index_and_check_records();
}

PlanarRoadGraph PlanarRoadGraph::with_virtual_terminals(std::vector<NodeRecord> nodes,
                                                        std::vector<EdgeRecord> edges,
                                                        const std::vector<NodeIndex>& sources,
                                                        const std::vector<NodeIndex>& sinks) {
  if (sources.empty() || sinks.empty()) {
    throw GraphError(GraphErrorKind::kTerminals, "sources and sinks must be nonempty");
  }
  PlanarRoadGraph base(NoValidate{}, std::move(nodes), std::move(edges), sources.front(),
                       sinks.front());
  check_planar_embedding(base.nodes_, base.edges_);
  base.faces_ = compute_faces(base.nodes_, base.edges_);
  return augment_terminals(base, sources, sinks);
}

void PlanarRoadGraph::index_and_check_records() {
  const auto n = static_cast<NodeIndex>(nodes_.size());
  for (NodeIndex i = 0; i < n; ++i) {
    const NodeRecord& rec = nodes_[i];
    if (!node_index_.emplace(rec.id, i).second) {
      throw GraphError(GraphErrorKind::kDuplicateId, "duplicate node id '" + rec.id + "'");
    }
    if (!std::isfinite(rec.x) || !std::isfinite(rec.y)) {
      throw GraphError(GraphErrorKind::kInvalidAttribute,
                       "node '" + rec.id + "' has non-finite coordinates");
    }
  }
  adjacency_.assign(nodes_.size(), {});
  for (EdgeIndex e = 0; e < static_cast<EdgeIndex>(edges_.size()); ++e) {
    const EdgeRecord& rec = edges_[e];
    if (!edge_index_.emplace(rec.id, e).second) {
      throw GraphError(GraphErrorKind::kDuplicateId, "duplicate edge id '" + rec.id + "'");
    }
    if (rec.u < 0 || rec.u >= n || rec.v < 0 || rec.v >= n) {
      throw GraphError(GraphErrorKind::kUnknownId, "edge '" + rec.id + "' has an unknown endpoint");
    }
    if (rec.u == rec.v) {
      throw GraphError(GraphErrorKind::kInvalidAttribute, "edge '" + rec.id + "' is a self-loop");
    }
    if (rec.is_virtual) {
      if (!(rec.length >= 0.0) || !std::isfinite(rec.length)) {
        throw GraphError(GraphErrorKind::kInvalidAttribute,
                         "virtual edge '" + rec.id + "' has an invalid length");
      }
      virtual_edges_.push_back(e);
    } else if (!(rec.length > 0.0) || !std::isfinite(rec.length)) {
      throw GraphError(GraphErrorKind::kInvalidAttribute,
                       "edge '" + rec.id + "' must have a positive finite length");
    }
    if (rec.capacity < 1) {
      throw GraphError(GraphErrorKind::kInvalidAttribute,
                       "edge '" + rec.id + "' must have capacity >= 1");
    }
    adjacency_[rec.u].push_back({e, rec.v});
    adjacency_[rec.v].push_back({e, rec.u});
  }
  if (source_ < 0 || source_ >= n || sink_ < 0 || sink_ >= n) {
    throw GraphError(GraphErrorKind::kUnknownId, "source or sink is not a node of the graph");
  }
  if (source_ == sink_) {
    throw GraphError(GraphErrorKind::kTerminals, "source and sink must differ");
  }
}

void PlanarRoadGraph::check_terminals_connected() const {
  std::vector<char> seen(nodes_.size(), 0);
  std::queue<NodeIndex> frontier;
  frontier.push(source_);
  seen[source_] = 1;
  while (!frontier.empty()) {
    const NodeIndex u = frontier.front();
    frontier.pop();
    for (const Incidence& inc : adjacency_[u]) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = 1;
        frontier.push(inc.neighbor);
      }
    }
  }
  if (!seen[sink_]) {
    throw GraphError(GraphErrorKind::kDisconnectedTerminals,
                     "sink '" + nodes_[sink_].id + "' is not reachable from source '" +
                         nodes_[source_].id + "'");
  }
}

std::optional<NodeIndex> PlanarRoadGraph::find_node(std::string_view id) const {
  auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> PlanarRoadGraph::find_edge(std::string_view id) const {
  auto it = edge_index_.find(std::string(id));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> PlanarRoadGraph::edge_between(NodeIndex u, NodeIndex v) const {
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const NodeIndex target = &a == &adjacency_[u] ? v : u;
  for (const Incidence& inc : a) {
    if (inc.neighbor == target) return inc.edge;
  }
  return std::nullopt;
}

Capacity PlanarRoadGraph::total_real_capacity() const {
  Capacity total = 0;
  for (const EdgeRecord& e : edges_) {
    if (!e.is_virtual) total += e.capacity;
  }
  return total;
}

std::uint64_t PlanarRoadGraph::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const NodeRecord& n : nodes_) mix(n.id);
  for (const EdgeRecord& e : edges_) {
    mix(e.id);
    mix(nodes_[e.u].id);
    mix(nodes_[e.v].id);
    char attrs[64];
    std::snprintf(attrs, sizeof attrs, "%.17g/%lld", e.length, static_cast<long long>(e.capacity));
    mix(attrs);
  }
  mix(nodes_[source_].id);
  mix(nodes_[sink_].id);
  return h;
}

PlanarRoadGraph augment_terminals(const PlanarRoadGraph& graph,
                                  const std::vector<NodeIndex>& sources,
                                  const std::vector<NodeIndex>& sinks) {
  if (sources.empty() || sinks.empty()) {
    throw GraphError(GraphErrorKind::kTerminals, "sources and sinks must be nonempty");
  }
  const auto n = static_cast<NodeIndex>(graph.node_count());
  std::vector<char> role(graph.node_count(), 0);
  for (NodeIndex s : sources) {
    if (s < 0 || s >= n) throw GraphError(GraphErrorKind::kUnknownId, "unknown source node");
    role[s] |= 1;
  }
  for (NodeIndex t : sinks) {
    if (t < 0 || t >= n) throw GraphError(GraphErrorKind::kUnknownId, "unknown sink node");
    if (role[t] & 1) {
      throw GraphError(GraphErrorKind::kTerminals,
                       "node '" + graph.node(t).id + "' is both a source and a sink");
    }
    role[t] |= 2;
  }

  std::vector<NodeRecord> nodes = graph.nodes();
  std::vector<EdgeRecord> edges = graph.edges();

  auto fresh_node_id = [&graph](std::string base) {
    while (graph.find_node(base)) base += "'";
    return base;
  };
  auto fresh_edge_id = [&graph](std::string base) {
    while (graph.find_edge(base)) base += "'";
    return base;
  };
  auto centroid = [&graph](const std::vector<NodeIndex>& members) {
    double x = 0.0, y = 0.0;
    for (NodeIndex m : members) {
      x += graph.node(m).x;
      y += graph.node(m).y;
    }
    return std::pair{x / members.size(), y / members.size()};
  };

  const Capacity sentinel = graph.infinite_capacity();
  const auto super_source = static_cast<NodeIndex>(nodes.size());
  const auto [sx, sy] = centroid(sources);
  nodes.push_back({fresh_node_id("s*"), sx, sy, true});
  const auto super_sink = static_cast<NodeIndex>(nodes.size());
  const auto [tx, ty] = centroid(sinks);
  nodes.push_back({fresh_node_id("t*"), tx, ty, true});

  for (NodeIndex s : sources) {
    edges.push_back({fresh_edge_id("s*-" + graph.node(s).id), super_source, s, 0.0, sentinel, true});
  }
  for (NodeIndex t : sinks) {
    edges.push_back({fresh_edge_id(graph.node(t).id + "-t*"), t, super_sink, 0.0, sentinel, true});
  }

  PlanarRoadGraph out(PlanarRoadGraph::NoValidate{}, std::move(nodes), std::move(edges),
                      super_source, super_sink);
  out.check_terminals_connected();
  out.faces_ = graph.faces();
  return out;
}

PlanarRoadGraph make_grid(int rows, int cols, double edge_length, Capacity capacity) {
  if (rows < 1 || cols < 1 || rows * cols < 2) {
    throw GraphError(GraphErrorKind::kInvalidAttribute, "grid needs at least two nodes");
  }
  std::vector<NodeRecord> nodes;
  nodes.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      nodes.push_back({std::to_string(r * cols + c + 1), c * edge_length, r * edge_length, false});
    }
  }
  std::vector<EdgeRecord> edges;
  int next_id = 1;
  auto at = [cols](int r, int c) { return static_cast<NodeIndex>(r * cols + c); };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) {
      edges.push_back({std::to_string(next_id++), at(r, c), at(r, c + 1), edge_length, capacity, false});
    }
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      edges.push_back({std::to_string(next_id++), at(r, c), at(r + 1, c), edge_length, capacity, false});
    }
  }
  return PlanarRoadGraph(std::move(nodes), std::move(edges), 0, at(rows - 1, cols - 1));
}

}  // namespace flowsample
