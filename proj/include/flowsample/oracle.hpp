#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flowsample/flow_state.hpp"
#include "flowsample/graph.hpp"

namespace flowsample {

/// Canonical multiset key: the paths' node sequences in sorted order.
std::string canonical_key(const FlowState& state);

/// Every integer max flow of a small graph, each once up to path order.
struct StateSpace {
  const PlanarRoadGraph* graph = nullptr;
  Capacity flow_value = 0;
  std::vector<FlowState> states;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return states.size(); }
  std::optional<std::size_t> find(const FlowState& state) const;
};

class EnumerationCapExceeded : public std::runtime_error {
 public:
  EnumerationCapExceeded(const std::string& what, std::size_t partial)
      : std::runtime_error(what), partial_count_(partial) {}
  std::size_t partial_count() const { return partial_count_; }

 private:
  std::size_t partial_count_;
};

inline constexpr std::size_t kDefaultStateCap = 100000;

/// Depth-first enumeration of all multisets of mf simple s-t paths that fit
/// the capacities. Throws EnumerationCapExceeded once more than `cap` simple
/// paths or states turn up.
StateSpace enumerate_states(const PlanarRoadGraph& graph, std::size_t cap = kDefaultStateCap);
StateSpace enumerate_states(PlanarRoadGraph&&, std::size_t = kDefaultStateCap) = delete;

/// Exact kernel of the chain over an enumerated space together with the
/// target distribution pi(x) = lambda^|x| / Z.
struct ExactDistribution {
  double lambda = 1.0;
  std::vector<double> pi;
  double log_z = 0.0;  // ln Z
  /// Off-diagonal transitions per row, sorted by target.
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
  std::vector<double> stay;  // diagonal

  std::size_t size() const { return pi.size(); }
  double transition(std::size_t from, std::size_t to) const;
};

ExactDistribution exact_transition_matrix(const StateSpace& space, double lambda);

/// max |pi(x) P(x,y) - pi(y) P(y,x)| over all pairs.
double detailed_balance_residual(const ExactDistribution& dist);
/// max |(pi P)(y) - pi(y)|.
double stationarity_residual(const ExactDistribution& dist);
/// max |sum_y P(x,y) - 1|.
double row_sum_residual(const ExactDistribution& dist);

struct IrreducibilityVerdict {
  bool connected = true;
  /// (from, to) with `to` unreachable from `from` when not connected.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

IrreducibilityVerdict check_irreducible(const ExactDistribution& dist);
IrreducibilityVerdict check_irreducible(const StateSpace& space);

/// Half the L1 distance between a histogram (normalised here) and pi.
/// Throws std::invalid_argument on a size mismatch or an empty histogram.
double tv_distance(const std::vector<double>& histogram, const ExactDistribution& exact);

struct TvCheckpoint {
  std::uint64_t steps = 0;
  double tv = 0.0;
};

/// Runs the chain from `start` for `burn_in` steps, then records the visited
/// states and reports the TV distance at every checkpoint (step counts after
/// burn-in, ascending).
std::vector<TvCheckpoint> simulate_tv(const StateSpace& space, const ExactDistribution& exact,
                                      const FlowState& start, std::uint64_t seed,
                                      std::uint64_t burn_in,
                                      const std::vector<std::uint64_t>& checkpoints);

struct DiagnosticReport {
  std::size_t state_count = 0;
  Capacity flow_value = 0;
  double lambda = 1.0;
  double detailed_balance = 0.0;
  double stationarity = 0.0;
  double row_sum = 0.0;
  bool pi_uniform = false;
  IrreducibilityVerdict irreducible;
  std::vector<FlowState> witness_states;  // (from, to) when not connected
  std::vector<TvCheckpoint> tv;
};

/// Full oracle pass used by `validate`: enumerate, build the kernel, check
/// balance and connectivity, then simulate up to `steps` steps.
DiagnosticReport run_diagnostics(const PlanarRoadGraph& graph, double lambda, std::uint64_t steps,
                                 std::size_t cap, std::uint64_t seed);

}  // namespace flowsample
