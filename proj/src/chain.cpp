#include "flowsample/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flowsample {

void ChainParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be positive and finite");
  }
}

namespace {

// ln(lambda^|y| / lambda^|x|), exactly zero when the lengths or lambda make it so.
double length_log_weight(double x_len, double y_len, double lambda) {
  if (lambda == 1.0 || y_len == x_len) return 0.0;
  return (y_len - x_len) * std::log(lambda);
}

}  // namespace

double acceptance_log_ratio(double x_len, double y_len, double lambda) {
  return std::min(0.0, length_log_weight(x_len, y_len, lambda));
}

Rerouter::Rerouter(const PlanarRoadGraph& graph)
    : graph_(&graph), edge_slot_(graph.edge_count(), 0), node_mark_(graph.node_count(), 0) {}

RerouteStatus Rerouter::reroute(const UnitPath& path, const FaceRecord& face, UnitPath& out) {
  const std::size_t L = face.size();
  const auto& walk = face.walk;
  const auto& boundary = face.boundary;

  for (std::size_t j = 0; j < path.edges.size(); ++j) {
    edge_slot_[path.edges[j]] = static_cast<std::int32_t>(j + 1);
  }
  std::vector<std::size_t>& positions = scratch_positions_;
  positions.clear();
  for (std::size_t i = 0; i < L; ++i) {
    if (edge_slot_[boundary[i]] != 0) positions.push_back(i);
  }
  // Path slots of the shared walk positions, read before the marks go.
  std::size_t lo = path.edges.size(), hi = 0;
  bool repeated = false;
  for (std::size_t i : positions) {
    const auto slot = static_cast<std::size_t>(edge_slot_[boundary[i]] - 1);
    lo = std::min(lo, slot);
    hi = std::max(hi, slot);
  }
  for (std::size_t i : positions) {
    // A second visit to the same edge (a bridge walked both ways) clears it.
    std::int32_t& mark = edge_slot_[boundary[i]];
    if (mark == 0) repeated = true;
    mark = 0;
  }
  for (EdgeIndex e : path.edges) edge_slot_[e] = 0;

  const std::size_t q = positions.size();
  last_shared_ = q;
  if (q == 0) return RerouteStatus::kNoSharedEdge;
  if (q == L || repeated || hi - lo + 1 != q) return RerouteStatus::kUndefined;

  // The shared positions must form a single cyclic run of the walk.
  std::size_t gaps = 0;
  std::size_t run_start = positions.front();
  for (std::size_t k = 1; k < q; ++k) {
    if (positions[k] - positions[k - 1] > 1) {
      ++gaps;
      run_start = positions[k];
    }
  }
  if (positions.front() + L - positions.back() > 1) ++gaps;
  if (gaps != 1) return RerouteStatus::kUndefined;
  if (positions.front() + L - positions.back() > 1) run_start = positions.front();

  const std::size_t a = lo;  // path segment spans nodes a .. a + q
  auto w = [&](std::size_t offset) { return walk[(run_start + offset) % L]; };
  bool forward = true, backward = true;
  for (std::size_t j = 0; j <= q; ++j) {
    forward = forward && w(j) == path.nodes[a + j];
    backward = backward && w(j) == path.nodes[a + q - j];
  }
  if (!forward && !backward) return RerouteStatus::kUndefined;

  out.nodes.clear();
  out.edges.clear();
  out.nodes.insert(out.nodes.end(), path.nodes.begin(), path.nodes.begin() + static_cast<long>(a));
  out.edges.insert(out.edges.end(), path.edges.begin(), path.edges.begin() + static_cast<long>(a));
  const std::size_t arc = L - q;
  last_arc_ = {a, a + arc};
  if (forward) {
    // Path follows the walk; go round the other way from run_start.
    for (std::size_t j = 0; j <= arc; ++j) out.nodes.push_back(walk[(run_start + L - j) % L]);
    for (std::size_t j = 0; j < arc; ++j) out.edges.push_back(boundary[(run_start + L - 1 - j) % L]);
  } else {
    for (std::size_t j = 0; j <= arc; ++j) out.nodes.push_back(walk[(run_start + q + j) % L]);
    for (std::size_t j = 0; j < arc; ++j) out.edges.push_back(boundary[(run_start + q + j) % L]);
  }
  out.nodes.insert(out.nodes.end(), path.nodes.begin() + static_cast<long>(a + q + 1), path.nodes.end());
  out.edges.insert(out.edges.end(), path.edges.begin() + static_cast<long>(a + q), path.edges.end());

  if (++epoch_ == 0) {
    std::fill(node_mark_.begin(), node_mark_.end(), 0);
    epoch_ = 1;
  }
  for (NodeIndex n : out.nodes) {
    if (node_mark_[n] == epoch_) return RerouteStatus::kUndefined;
    node_mark_[n] = epoch_;
  }
  out.length = path_length(*graph_, out.edges);
  return RerouteStatus::kOk;
}

std::optional<UnitPath> reroute(const UnitPath& path, const FaceRecord& face,
                                const FlowState& state) {
  Rerouter r(state.graph());
  UnitPath out;
  if (r.reroute(path, face, out) != RerouteStatus::kOk) return std::nullopt;
  return out;
}

bool reroute_fits(const FlowState& state, const UnitPath& removed, const UnitPath& added) {
  const PlanarRoadGraph& g = state.graph();
  for (EdgeIndex e : added.edges) {
    const bool kept = std::find(removed.edges.begin(), removed.edges.end(), e) != removed.edges.end();
    if (!kept && state.usage(e) + 1 > g.edge(e).capacity) return false;
  }
  return true;
}

double multiplicity_log_correction(const FlowState& state, std::size_t i,
                                   const UnitPath& replacement) {
  const std::size_t before = state.multiplicity(state.path(i));
  const std::size_t after = state.multiplicity(replacement) + 1;
  if (before == after) return 0.0;
  return std::log(static_cast<double>(after)) - std::log(static_cast<double>(before));
}

namespace {

StepOutcome advance_state(const PlanarRoadGraph& g, double lambda, Rng& rng, Rerouter& rerouter,
                          UnitPath& candidate, FlowState& state) {
  if (!rng.coin()) return StepOutcome::kLazy;
  const FaceRecord& face = g.face(rng.uniform_index(g.face_count()));
  if (state.path_count() == 0) return StepOutcome::kNoSharedEdge;
  const std::size_t i = rng.uniform_index(state.path_count());

  bool touches = false;
  for (EdgeIndex e : face.boundary) touches = touches || state.usage(e) > 0;
  if (!touches) return StepOutcome::kNoSharedEdge;

  const UnitPath& path = state.path(i);
  switch (rerouter.reroute(path, face, candidate)) {
    case RerouteStatus::kNoSharedEdge:
      return StepOutcome::kNoSharedEdge;
    case RerouteStatus::kUndefined:
      return StepOutcome::kUndefined;
    case RerouteStatus::kOk:
      break;
  }
  // The new arc is disjoint from the old path, so each of its edges gains one unit.
  const auto [arc_begin, arc_end] = rerouter.last_arc();
  for (std::size_t j = arc_begin; j < arc_end; ++j) {
    const EdgeIndex e = candidate.edges[j];
    if (state.usage(e) >= g.edge(e).capacity) return StepOutcome::kOverCapacity;
  }

  double y_len = 0.0;
  for (std::size_t k = 0; k < state.path_count(); ++k) {
    y_len += k == i ? candidate.length : state.path(k).length;
  }
  const double log_accept = length_log_weight(state.total_length(), y_len, lambda) +
                            multiplicity_log_correction(state, i, candidate);
  if (log_accept < 0.0 && !(std::log(rng.uniform_open01()) < log_accept)) {
    return StepOutcome::kRejected;
  }
  state.replace_path(i, std::move(candidate));
  candidate = UnitPath{};
  return StepOutcome::kAccepted;
}

}  // namespace

MarkovChain::MarkovChain(const PlanarRoadGraph& graph, ChainParams params)
    : MarkovChain(graph, params, Rng(params.rng_seed)) {}

MarkovChain::MarkovChain(const PlanarRoadGraph& graph, ChainParams params, Rng rng)
    : graph_(&graph), params_(params), rng_(rng), rerouter_(graph) {
  params_.validate();
}

StepOutcome MarkovChain::advance(FlowState& state) {
  return advance_state(*graph_, params_.lambda, rng_, rerouter_, candidate_, state);
}

FlowState step(const FlowState& state, const ChainParams& params, Rng& rng) {
  params.validate();
  Rerouter rerouter(state.graph());
  UnitPath candidate;
  FlowState next = state;
  advance_state(state.graph(), params.lambda, rng, rerouter, candidate, next);
  return next;
}

}  // namespace flowsample
