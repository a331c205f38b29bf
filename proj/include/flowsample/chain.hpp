#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flowsample/flow_state.hpp"
#include "flowsample/graph.hpp"
#include "flowsample/rng.hpp"

namespace flowsample {

struct ChainParams {
  double lambda = 1.0;
  std::uint64_t rng_seed = 0;

  /// Throws std::invalid_argument unless lambda is positive and finite.
  void validate() const;
};

enum class StepOutcome {
  kLazy,          // b = 0
  kNoSharedEdge,  // face and path are disjoint
  kUndefined,     // reroute not defined for this pair
  kOverCapacity,  // reroute would exceed a capacity
  kRejected,      // Metropolis draw failed
  kAccepted,
};

/// min(0, (y_len - x_len) * ln lambda).
double acceptance_log_ratio(double x_len, double y_len, double lambda);

enum class RerouteStatus { kOk, kNoSharedEdge, kUndefined };

/// Reroutes paths along face boundaries. Holds per-edge and per-node scratch
/// marks so repeated calls on one graph allocate nothing.
class Rerouter {
 public:
  explicit Rerouter(const PlanarRoadGraph& graph);

  /// The segment of `path` shared with `face` must be one contiguous run of
  /// the path and one contiguous arc of the face walk; it is replaced by the
  /// complementary arc. On kOk `out` holds the new path, which is simple.
  RerouteStatus reroute(const UnitPath& path, const FaceRecord& face, UnitPath& out);

  /// Face walk positions shared with the path from the last call.
  std::size_t last_shared() const { return last_shared_; }
  /// Edge positions [first, second) of `out` that form the new arc.
  std::pair<std::size_t, std::size_t> last_arc() const { return last_arc_; }

 private:
  const PlanarRoadGraph* graph_;
  std::vector<std::int32_t> edge_slot_;  // index in the path + 1, or 0
  std::vector<std::uint32_t> node_mark_;
  std::uint32_t epoch_ = 0;
  std::vector<std::size_t> scratch_positions_;
  std::size_t last_shared_ = 0;
  std::pair<std::size_t, std::size_t> last_arc_{0, 0};
};

/// Free-function form; allocates a Rerouter per call.
std::optional<UnitPath> reroute(const UnitPath& path, const FaceRecord& face,
                                const FlowState& state);

/// True when replacing `removed` by `added` keeps every edge within capacity.
bool reroute_fits(const FlowState& state, const UnitPath& removed, const UnitPath& added);

/// Log of the proposal-asymmetry factor for replacing one copy of path i of
/// `state` by `replacement`: ln(copies of replacement afterwards) - ln(copies
/// of path i now). Zero whenever all paths involved are distinct.
double multiplicity_log_correction(const FlowState& state, std::size_t i,
                                   const UnitPath& replacement);

/// One chain per stream. advance() mutates the state in place; step() is the
/// value-returning form.
class MarkovChain {
 public:
  MarkovChain(const PlanarRoadGraph& graph, ChainParams params);
  MarkovChain(const PlanarRoadGraph& graph, ChainParams params, Rng rng);

  StepOutcome advance(FlowState& state);

  const ChainParams& params() const { return params_; }
  Rng& rng() { return rng_; }

 private:
  const PlanarRoadGraph* graph_;
  ChainParams params_;
  Rng rng_;
  Rerouter rerouter_;
  UnitPath candidate_;
};

FlowState step(const FlowState& state, const ChainParams& params, Rng& rng);

}  // namespace flowsample
