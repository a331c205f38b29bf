#include "flowsample/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "flowsample/chain.hpp"
#include "flowsample/maxflow.hpp"

namespace flowsample {
namespace {

void append_key(std::string& key, const std::vector<NodeIndex>& nodes) {
  for (NodeIndex n : nodes) {
    key.append(reinterpret_cast<const char*>(&n), sizeof n);
  }
  const NodeIndex sep = -1;
  key.append(reinterpret_cast<const char*>(&sep), sizeof sep);
}

// All simple source-sink paths, in lexicographic node order.
std::vector<UnitPath> simple_paths(const PlanarRoadGraph& g, std::size_t cap) {
  std::vector<UnitPath> out;
  std::vector<char> on_path(g.node_count(), 0);
  std::vector<NodeIndex> nodes{g.source()};
  on_path[g.source()] = 1;
  auto dfs = [&](auto&& self, NodeIndex at) -> void {
    if (at == g.sink()) {
      if (out.size() >= cap) {
        throw EnumerationCapExceeded("more than " + std::to_string(cap) + " simple paths",
                                     out.size());
      }
      out.push_back(make_path(g, nodes));
      return;
    }
    std::vector<NodeIndex> next;
    for (const Incidence& inc : g.incident(at)) {
      if (!on_path[inc.neighbor]) next.push_back(inc.neighbor);
    }
    std::sort(next.begin(), next.end());
    for (NodeIndex n : next) {
      on_path[n] = 1;
      nodes.push_back(n);
      self(self, n);
      nodes.pop_back();
      on_path[n] = 0;
    }
  };
  dfs(dfs, g.source());
  return out;
}

}  // namespace

std::string canonical_key(const FlowState& state) {
  std::vector<const std::vector<NodeIndex>*> seqs;
  for (const UnitPath& p : state.paths()) seqs.push_back(&p.nodes);
  std::sort(seqs.begin(), seqs.end(), [](auto* a, auto* b) { return *a < *b; });
  std::string key;
  for (auto* s : seqs) append_key(key, *s);
  return key;
}

std::optional<std::size_t> StateSpace::find(const FlowState& state) const {
  auto it = index.find(canonical_key(state));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

StateSpace enumerate_states(const PlanarRoadGraph& graph, std::size_t cap) {
  StateSpace space;
  space.graph = &graph;
  space.flow_value = max_flow(graph).value();
  const auto mf = static_cast<std::size_t>(space.flow_value);
  const std::vector<UnitPath> paths = simple_paths(graph, cap);

  // Non-decreasing index sequences are exactly the multisets, already in
  // canonical order because `paths` is sorted.
  std::vector<Capacity> usage(graph.edge_count(), 0);
  std::vector<std::size_t> chosen;
  auto fits = [&](const UnitPath& p) {
    for (EdgeIndex e : p.edges) {
      if (usage[e] + 1 > graph.edge(e).capacity) return false;
    }
    return true;
  };
  auto choose = [&](auto&& self, std::size_t from) -> void {
    if (chosen.size() == mf) {
      if (space.states.size() >= cap) {
        throw EnumerationCapExceeded("more than " + std::to_string(cap) + " states",
                                     space.states.size());
      }
      std::vector<UnitPath> members;
      for (std::size_t i : chosen) members.push_back(paths[i]);
      FlowState state(graph, std::move(members));
      space.index.emplace(canonical_key(state), space.states.size());
      space.states.push_back(std::move(state));
      return;
    }
    for (std::size_t i = from; i < paths.size(); ++i) {
      if (!fits(paths[i])) continue;
      for (EdgeIndex e : paths[i].edges) ++usage[e];
      chosen.push_back(i);
      self(self, i);
      chosen.pop_back();
      for (EdgeIndex e : paths[i].edges) --usage[e];
    }
  };
  choose(choose, 0);
  return space;
}

double ExactDistribution::transition(std::size_t from, std::size_t to) const {
  if (from == to) return stay[from];
  const auto& row = rows[from];
  auto it = std::lower_bound(row.begin(), row.end(), std::pair<std::size_t, double>{to, -1.0});
  return it != row.end() && it->first == to ? it->second : 0.0;
}

ExactDistribution exact_transition_matrix(const StateSpace& space, double lambda) {
  ExactDistribution dist;
  dist.lambda = lambda;
  const std::size_t n = space.size();
  if (n == 0) return dist;
  const PlanarRoadGraph& g = *space.graph;
  const double faces = static_cast<double>(g.face_count());
  const double mf = static_cast<double>(space.flow_value);

  double max_log = -INFINITY;
  std::vector<double> log_w(n);
  for (std::size_t a = 0; a < n; ++a) {
    log_w[a] = space.states[a].total_length() * std::log(lambda);
    max_log = std::max(max_log, log_w[a]);
  }
  double z = 0.0;
  for (double lw : log_w) z += std::exp(lw - max_log);
  dist.log_z = max_log + std::log(z);
  dist.pi.resize(n);
  for (std::size_t a = 0; a < n; ++a) dist.pi[a] = std::exp(log_w[a] - dist.log_z);

  Rerouter rerouter(g);
  UnitPath candidate;
  dist.rows.resize(n);
  dist.stay.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const FlowState& x = space.states[a];
    std::map<std::size_t, double> row;
    for (std::size_t i = 0; i < x.path_count(); ++i) {
      for (const FaceRecord& face : g.faces()) {
        if (rerouter.reroute(x.path(i), face, candidate) != RerouteStatus::kOk) continue;
        if (!reroute_fits(x, x.path(i), candidate)) continue;
        FlowState y = x;
        y.replace_path(i, candidate);
        auto b = space.find(y);
        if (!b) throw std::logic_error("chain left the enumerated state space");
        // Proposal probability of this (face, path) pair times the Hastings
        // acceptance; the copy counts make the proposal symmetric.
        const double copies_before = static_cast<double>(x.multiplicity(x.path(i)));
        const double copies_after = static_cast<double>(y.multiplicity(candidate));
        const double ratio = std::pow(lambda, y.total_length() - x.total_length()) *
                             copies_after / copies_before;
        row[*b] += std::min(1.0, ratio) / (2.0 * faces * mf);
      }
    }
    double out = 0.0;
    for (const auto& [b, p] : row) {
      dist.rows[a].emplace_back(b, p);
      out += p;
    }
    dist.stay[a] = 1.0 - out;
  }
  return dist;
}

double detailed_balance_residual(const ExactDistribution& dist) {
  double worst = 0.0;
  for (std::size_t a = 0; a < dist.size(); ++a) {
    for (const auto& [b, p] : dist.rows[a]) {
      worst = std::max(worst, std::abs(dist.pi[a] * p - dist.pi[b] * dist.transition(b, a)));
    }
  }
  return worst;
}

double stationarity_residual(const ExactDistribution& dist) {
  std::vector<double> next(dist.size(), 0.0);
  for (std::size_t a = 0; a < dist.size(); ++a) {
    next[a] += dist.pi[a] * dist.stay[a];
    for (const auto& [b, p] : dist.rows[a]) next[b] += dist.pi[a] * p;
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < dist.size(); ++a) worst = std::max(worst, std::abs(next[a] - dist.pi[a]));
  return worst;
}

double row_sum_residual(const ExactDistribution& dist) {
  double worst = 0.0;
  for (std::size_t a = 0; a < dist.size(); ++a) {
    double sum = dist.stay[a];
    for (const auto& entry : dist.rows[a]) sum += entry.second;
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

IrreducibilityVerdict check_irreducible(const ExactDistribution& dist) {
  IrreducibilityVerdict verdict;
  const std::size_t n = dist.size();
  if (n <= 1) return verdict;
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (const auto& [b, p] : dist.rows[a]) {
      if (p > 0.0) reverse[b].push_back(a);
    }
  }
  auto reach = [n](auto&& neighbours) {
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> frontier{0};
    seen[0] = 1;
    while (!frontier.empty()) {
      const std::size_t a = frontier.front();
      frontier.pop_front();
      neighbours(a, [&](std::size_t b) {
        if (!seen[b]) {
          seen[b] = 1;
          frontier.push_back(b);
        }
      });
    }
    return seen;
  };
  const auto forward = reach([&](std::size_t a, auto&& visit) {
    for (const auto& [b, p] : dist.rows[a]) {
      if (p > 0.0) visit(b);
    }
  });
  const auto backward = reach([&](std::size_t a, auto&& visit) {
    for (std::size_t b : reverse[a]) visit(b);
  });
  for (std::size_t a = 0; a < n; ++a) {
    if (!forward[a]) {
      verdict.connected = false;
      verdict.witness = std::pair<std::size_t, std::size_t>{0, a};
      return verdict;
    }
    if (!backward[a]) {
      verdict.connected = false;
      verdict.witness = std::pair<std::size_t, std::size_t>{a, 0};
      return verdict;
    }
  }
  return verdict;
}

IrreducibilityVerdict check_irreducible(const StateSpace& space) {
  return check_irreducible(exact_transition_matrix(space, 1.0));
}

double tv_distance(const std::vector<double>& histogram, const ExactDistribution& exact) {
  if (histogram.size() != exact.size()) {
    throw std::invalid_argument("histogram and distribution index different state spaces");
  }
  double total = 0.0;
  for (double h : histogram) total += h;
  if (!(total > 0.0)) throw std::invalid_argument("histogram is empty");
  double l1 = 0.0;
  for (std::size_t a = 0; a < histogram.size(); ++a) l1 += std::abs(histogram[a] / total - exact.pi[a]);
  return 0.5 * l1;
}

std::vector<TvCheckpoint> simulate_tv(const StateSpace& space, const ExactDistribution& exact,
                                      const FlowState& start, std::uint64_t seed,
                                      std::uint64_t burn_in,
                                      const std::vector<std::uint64_t>& checkpoints) {
  MarkovChain chain(*space.graph, ChainParams{exact.lambda, seed});
  FlowState x = start;
  for (std::uint64_t s = 0; s < burn_in; ++s) chain.advance(x);
  auto where = space.find(x);
  if (!where) throw std::logic_error("start state is outside the enumerated space");

  std::vector<double> histogram(space.size(), 0.0);
  std::vector<TvCheckpoint> out;
  std::uint64_t done = 0;
  for (std::uint64_t target : checkpoints) {
    for (; done < target; ++done) {
      if (chain.advance(x) == StepOutcome::kAccepted) {
        where = space.find(x);
        if (!where) throw std::logic_error("chain left the enumerated state space");
      }
      histogram[*where] += 1.0;
    }
    out.push_back({target, tv_distance(histogram, exact)});
  }
  return out;
}

DiagnosticReport run_diagnostics(const PlanarRoadGraph& graph, double lambda, std::uint64_t steps,
                                 std::size_t cap, std::uint64_t seed) {
  DiagnosticReport report;
  const StateSpace space = enumerate_states(graph, cap);
  const ExactDistribution dist = exact_transition_matrix(space, lambda);
  report.state_count = space.size();
  report.flow_value = space.flow_value;
  report.lambda = lambda;
  report.detailed_balance = detailed_balance_residual(dist);
  report.stationarity = stationarity_residual(dist);
  report.row_sum = row_sum_residual(dist);
  const auto [lo, hi] = std::minmax_element(dist.pi.begin(), dist.pi.end());
  report.pi_uniform = *hi - *lo <= 1e-12;
  report.irreducible = check_irreducible(dist);
  if (report.irreducible.witness) {
    report.witness_states.push_back(space.states[report.irreducible.witness->first]);
    report.witness_states.push_back(space.states[report.irreducible.witness->second]);
  }

  std::vector<std::uint64_t> checkpoints;
  for (std::uint64_t c = 10000; c < steps; c *= 10) checkpoints.push_back(c);
  if (steps > 0) checkpoints.push_back(steps);
  if (!checkpoints.empty()) {
    const FlowState start = decompose(max_flow(graph));
    report.tv = simulate_tv(space, dist, start, seed, std::min<std::uint64_t>(steps / 10, 10000),
                            checkpoints);
  }
  return report;
}

}  // namespace flowsample
