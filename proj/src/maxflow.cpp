#include "flowsample/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>

namespace flowsample {
namespace {

// Capacity left for pushing flow from `from` across edge e.
Capacity residual(const EdgeRecord& e, const std::vector<Capacity>& net, EdgeIndex id,
                  NodeIndex from) {
  const Capacity along = from == e.u ? net[id] : -net[id];
  return e.capacity - along;
}

Capacity flow_from(const EdgeRecord& e, const std::vector<Capacity>& net, EdgeIndex id,
                   NodeIndex from) {
  return from == e.u ? net[id] : -net[id];
}

struct Hop {
  EdgeIndex edge;
  NodeIndex to;
};

// Fewest-edge path in the subgraph of arcs accepted by `usable`, ties broken
// by smallest edge index at every hop. Empty when t is unreachable.
template <typename Usable>
std::vector<Hop> lex_shortest_hops(const PlanarRoadGraph& g, Usable usable) {
  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<int> dist(g.node_count(), kUnset);
  std::deque<NodeIndex> frontier{g.sink()};
  dist[g.sink()] = 0;
  while (!frontier.empty() && dist[g.source()] == kUnset) {
    const NodeIndex y = frontier.front();
    frontier.pop_front();
    for (const Incidence& inc : g.incident(y)) {
      const NodeIndex x = inc.neighbor;
      if (dist[x] == kUnset && usable(inc.edge, x)) {
        dist[x] = dist[y] + 1;
        frontier.push_back(x);
      }
    }
  }
  std::vector<Hop> hops;
  if (dist[g.source()] == kUnset) return hops;
  for (NodeIndex x = g.source(); x != g.sink();) {
    Hop best{std::numeric_limits<EdgeIndex>::max(), -1};
    for (const Incidence& inc : g.incident(x)) {
      if (dist[inc.neighbor] == dist[x] - 1 && inc.edge < best.edge && usable(inc.edge, x)) {
        best = {inc.edge, inc.neighbor};
      }
    }
    hops.push_back(best);
    x = best.to;
  }
  return hops;
}

// Minimum-cost path under `cost`, then fewest edges, then smallest edge
// indices. Costs may be negative; `potential` must make every reduced cost
// cost + potential[to] - potential[from] non-negative and is updated to the
// new distances to t.
template <typename Usable, typename Cost>
std::vector<Hop> lex_shortest_length(const PlanarRoadGraph& g, Usable usable, Cost cost,
                                     std::vector<double>& potential) {
  struct Key {
    double length;
    int hops;
    bool operator<(const Key& o) const {
      return length < o.length || (length == o.length && hops < o.hops);
    }
    bool operator>(const Key& o) const { return o < *this; }
  };
  const Key unset{std::numeric_limits<double>::infinity(), 0};
  std::vector<Key> dist(g.node_count(), unset);
  std::vector<char> done(g.node_count(), 0);
  auto reduced = [&](EdgeIndex e, NodeIndex from, NodeIndex to) {
    return std::max(0.0, cost(e, from) + potential[to] - potential[from]);
  };
  using Item = std::pair<Key, NodeIndex>;
  auto later = [](const Item& a, const Item& b) { return a.first > b.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(later)> heap(later);
  dist[g.sink()] = {0.0, 0};
  heap.push({dist[g.sink()], g.sink()});
  while (!heap.empty()) {
    const auto [key, y] = heap.top();
    heap.pop();
    if (done[y]) continue;
    done[y] = 1;
    for (const Incidence& inc : g.incident(y)) {
      const NodeIndex x = inc.neighbor;
      if (done[x] || !usable(inc.edge, x)) continue;
      const Key cand{key.length + reduced(inc.edge, x, y), key.hops + 1};
      if (cand < dist[x]) {
        dist[x] = cand;
        heap.push({cand, x});
      }
    }
  }
  std::vector<Hop> hops;
  if (!done[g.source()]) return hops;
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
  };
  for (NodeIndex x = g.source(); x != g.sink();) {
    Hop best{std::numeric_limits<EdgeIndex>::max(), -1};
    for (const Incidence& inc : g.incident(x)) {
      const NodeIndex y = inc.neighbor;
      const Key& d = dist[y];
      if (!done[y] || d.hops != dist[x].hops - 1 || !usable(inc.edge, x)) continue;
      if (!close(dist[x].length, d.length + reduced(inc.edge, x, y))) continue;
      if (inc.edge < best.edge) best = {inc.edge, y};
    }
    if (best.to < 0) throw std::logic_error("shortest-length path reconstruction failed");
    hops.push_back(best);
    x = best.to;
  }
  for (NodeIndex n = 0; n < static_cast<NodeIndex>(g.node_count()); ++n) {
    if (done[n]) potential[n] += dist[n].length;
  }
  return hops;
}

}  // namespace

IntegerFlow::IntegerFlow(const PlanarRoadGraph& graph, std::vector<Capacity> net_flow)
    : graph_(&graph), net_(std::move(net_flow)) {
  if (net_.size() != graph.edge_count()) {
    throw std::invalid_argument("flow vector does not match the edge count");
  }
  std::vector<Capacity> excess(graph.node_count(), 0);
  for (EdgeIndex e = 0; e < static_cast<EdgeIndex>(net_.size()); ++e) {
    const EdgeRecord& rec = graph.edge(e);
    if (usage(e) > rec.capacity) {
      throw std::invalid_argument("flow on edge '" + rec.id + "' exceeds its capacity");
    }
    excess[rec.u] -= net_[e];
    excess[rec.v] += net_[e];
  }
  for (NodeIndex n = 0; n < static_cast<NodeIndex>(excess.size()); ++n) {
    if (n != graph.source() && n != graph.sink() && excess[n] != 0) {
      throw std::invalid_argument("flow is not conserved at node '" + graph.node(n).id + "'");
    }
  }
  value_ = -excess[graph.source()];
}

IntegerFlow max_flow(const PlanarRoadGraph& graph, AugmentStrategy strategy) {
  std::vector<Capacity> net(graph.edge_count(), 0);
  auto usable = [&](EdgeIndex e, NodeIndex from) {
    return residual(graph.edge(e), net, e, from) > 0;
  };
  // Pushing against existing flow cancels it and saves its length.
  auto cancels = [&](EdgeIndex e, NodeIndex from) {
    return flow_from(graph.edge(e), net, e, from) < 0;
  };
  auto cost = [&](EdgeIndex e, NodeIndex from) {
    return cancels(e, from) ? -graph.edge(e).length : graph.edge(e).length;
  };
  std::vector<double> potential(graph.node_count(), 0.0);
  for (;;) {
    const std::vector<Hop> path = strategy == AugmentStrategy::kBreadthFirst
                                      ? lex_shortest_hops(graph, usable)
                                      : lex_shortest_length(graph, usable, cost, potential);
    if (path.empty()) break;
    Capacity bottleneck = std::numeric_limits<Capacity>::max();
    NodeIndex at = graph.source();
    for (const Hop& h : path) {
      const EdgeRecord& e = graph.edge(h.edge);
      const Capacity room = cancels(h.edge, at) ? -flow_from(e, net, h.edge, at)
                                                : residual(e, net, h.edge, at);
      bottleneck = std::min(bottleneck, room);
      at = h.to;
    }
    at = graph.source();
    for (const Hop& h : path) {
      net[h.edge] += at == graph.edge(h.edge).u ? bottleneck : -bottleneck;
      at = h.to;
    }
  }
  return IntegerFlow(graph, std::move(net));
}

FlowState decompose(const IntegerFlow& flow) {
  const PlanarRoadGraph& g = flow.graph();
  std::vector<Capacity> net = flow.net_flows();
  auto carries = [&](EdgeIndex e, NodeIndex from) {
    return flow_from(g.edge(e), net, e, from) > 0;
  };
  std::vector<UnitPath> paths;
  for (Capacity i = 0; i < flow.value(); ++i) {
    const std::vector<Hop> hops = lex_shortest_hops(g, carries);
    if (hops.empty()) throw std::logic_error("flow decomposition ran out of s-t paths");
    std::vector<NodeIndex> nodes{g.source()};
    NodeIndex at = g.source();
    for (const Hop& h : hops) {
      net[h.edge] += at == g.edge(h.edge).u ? -1 : 1;
      nodes.push_back(h.to);
      at = h.to;
    }
    paths.push_back(make_path(g, std::move(nodes)));
  }
  return FlowState(g, std::move(paths));
}

}  // namespace flowsample
